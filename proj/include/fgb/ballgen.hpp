#pragma once

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "fgb/core.hpp"
#include "fgb/fcm.hpp"

namespace fgb {

struct BallGenConfig {
    // Balls below this size are never candidates for splitting. The weighted
    // DM comparison alone does not terminate the recursion: re-centering the
    // children almost always lowers their mean member distance, so without a
    // floor the recursion shatters every dataset into pairs and singletons.
    // Reference implementations of the method stop probing below 8 members,
    // which is also what keeps the later connection stages well conditioned.
    std::size_t min_split_size = 8;
    FcmConfig fcm{};
    double radius_factor = 2.0;  // oversize threshold multiplier
};

struct SplitCandidate {
    FuzzyGranularBall parent;
    FuzzyGranularBall child1;
    FuzzyGranularBall child2;
    double dm_parent = 0.0;
    double dm_weight = 0.0;
    MembershipMatrix U_local;  // n_parent x 2
    CenterSet V_local;         // 2 x d
};

namespace detail {

inline Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.points = Matrix(indices.size(), data.d());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        auto src = data.points.row(indices[r]);
        std::copy(src.begin(), src.end(), out.points.row(r).begin());
    }
    return out;
}

}  // namespace detail

// Two starting prototypes for a 2-way split: the midpoints between the ball
// center and (a) the member farthest from the center, (b) the member farthest
// from that first pick.
inline CenterSet initial_split_centers(const Dataset& data,
                                       const FuzzyGranularBall& ball) {
    const std::size_t p1 = farthest_point(data, ball.member_indices, ball.center);
    const std::size_t p2 =
        farthest_point(data, ball.member_indices, data.points.row(p1));
    CenterSet V(2, data.d());
    for (std::size_t j = 0; j < data.d(); ++j) {
        V(0, j) = (ball.center[j] + data.points(p1, j)) / 2.0;
        V(1, j) = (ball.center[j] + data.points(p2, j)) / 2.0;
    }
    return V;
}

namespace detail {

// Shared mechanics of a 2-way local FCM split: fit on the ball's members,
// hard-assign by max membership (ties to the first cluster), and return the
// pieces. Degenerate outcomes (FCM collapse, an empty child) yield nullopt.
inline std::optional<SplitCandidate> split_mechanics(const Dataset& data,
                                                     const FuzzyGranularBall& ball,
                                                     const BallGenConfig& config) {
    const Dataset local = subset(data, ball.member_indices);
    const CenterSet V0 = initial_split_centers(data, ball);
    FcmResult fit;
    try {
        fit = fcm_fit(local, 2, config.fcm, V0);
    } catch (const DegenerateClusterError&) {
        return std::nullopt;
    }
    std::vector<std::size_t> c1, c2;
    for (std::size_t r = 0; r < local.n(); ++r) {
        if (fit.U(r, 1) > fit.U(r, 0))
            c2.push_back(ball.member_indices[r]);
        else
            c1.push_back(ball.member_indices[r]);
    }
    if (c1.empty() || c2.empty()) return std::nullopt;

    SplitCandidate cand;
    cand.parent = ball;
    cand.child1 = ball_stats(data, std::move(c1));
    cand.child2 = ball_stats(data, std::move(c2));
    cand.dm_parent = ball.dm;
    const double n = static_cast<double>(ball.size);
    cand.dm_weight =
        (static_cast<double>(cand.child1.size) / n) * cand.child1.dm +
        (static_cast<double>(cand.child2.size) / n) * cand.child2.dm;
    cand.U_local = std::move(fit.U);
    cand.V_local = std::move(fit.V);
    return cand;
}

}  // namespace detail

// Attempt a split and accept it only when the size-weighted child DM is
// strictly below the parent's DM. Undersized, zero-radius, and degenerate
// balls all report no-split.
inline std::optional<SplitCandidate> try_split(const Dataset& data,
                                               const FuzzyGranularBall& ball,
                                               const BallGenConfig& config) {
    if (ball.size < config.min_split_size || ball.radius <= 0.0)
        return std::nullopt;
    auto cand = detail::split_mechanics(data, ball, config);
    if (!cand) return std::nullopt;
    if (!(cand->dm_weight < cand->dm_parent)) return std::nullopt;
    return cand;
}

// FIFO recursion: start from one ball holding the whole dataset, split while
// the weighted-DM rule accepts, finalize the rest. The result partitions the
// point indices.
inline std::vector<FuzzyGranularBall> generate_balls(const Dataset& data,
                                                     const BallGenConfig& config = {}) {
    std::vector<std::size_t> all(data.n());
    for (std::size_t i = 0; i < data.n(); ++i) all[i] = i;
    std::deque<FuzzyGranularBall> queue;
    queue.push_back(ball_stats(data, std::move(all)));

    std::vector<FuzzyGranularBall> done;
    while (!queue.empty()) {
        FuzzyGranularBall ball = std::move(queue.front());
        queue.pop_front();
        if (auto cand = try_split(data, ball, config)) {
            queue.push_back(std::move(cand->child1));
            queue.push_back(std::move(cand->child2));
        } else {
            done.push_back(std::move(ball));
        }
    }
    return done;
}

namespace detail {

// Force-split used by radius normalization: same mechanics, no DM test. When
// FCM degenerates, fall back to assigning members to the nearer of the two
// initial prototypes, pinning the extreme points so both children are
// nonempty. Only balls with positive radius reach this.
inline std::optional<std::pair<FuzzyGranularBall, FuzzyGranularBall>> force_split(
    const Dataset& data, const FuzzyGranularBall& ball,
    const BallGenConfig& config) {
    if (auto cand = split_mechanics(data, ball, config))
        return std::make_pair(std::move(cand->child1), std::move(cand->child2));

    const std::size_t p1 = farthest_point(data, ball.member_indices, ball.center);
    const std::size_t p2 =
        farthest_point(data, ball.member_indices, data.points.row(p1));
    if (p1 == p2) return std::nullopt;
    const CenterSet V0 = initial_split_centers(data, ball);
    std::vector<std::size_t> c1, c2;
    for (std::size_t idx : ball.member_indices) {
        if (idx == p1) {
            c1.push_back(idx);
        } else if (idx == p2) {
            c2.push_back(idx);
        } else if (distance(data.points.row(idx), V0.row(0)) <=
                   distance(data.points.row(idx), V0.row(1))) {
            c1.push_back(idx);
        } else {
            c2.push_back(idx);
        }
    }
    if (c1.empty() || c2.empty()) return std::nullopt;
    return std::make_pair(ball_stats(data, std::move(c1)),
                          ball_stats(data, std::move(c2)));
}

}  // namespace detail

// Post-pass over the generated balls: force-split every ball whose radius
// reaches radius_factor times the larger of the mean and median radius.
// Thresholds are recomputed once per sweep; sweeps repeat until stable.
inline std::vector<FuzzyGranularBall> normalize_radii(const Dataset& data,
                                                      std::vector<FuzzyGranularBall> balls,
                                                      const BallGenConfig& config = {}) {
    while (true) {
        std::vector<double> radii(balls.size());
        for (std::size_t i = 0; i < balls.size(); ++i) radii[i] = balls[i].radius;
        std::sort(radii.begin(), radii.end());
        double mean = 0.0;
        for (double r : radii) mean += r;
        mean /= static_cast<double>(radii.size());
        const std::size_t mid = radii.size() / 2;
        const double median = radii.size() % 2 == 1
                                  ? radii[mid]
                                  : (radii[mid - 1] + radii[mid]) / 2.0;
        const double threshold = config.radius_factor * std::max(mean, median);

        bool changed = false;
        std::vector<FuzzyGranularBall> next;
        next.reserve(balls.size() + 1);
        for (auto& ball : balls) {
            const bool oversize = ball.radius >= threshold &&
                                  ball.size >= config.min_split_size &&
                                  ball.radius > 0.0;
            if (oversize) {
                if (auto split = detail::force_split(data, ball, config)) {
                    next.push_back(std::move(split->first));
                    next.push_back(std::move(split->second));
                    changed = true;
                    continue;
                }
            }
            next.push_back(std::move(ball));
        }
        balls = std::move(next);
        if (!changed) return balls;
    }
}

}  // namespace fgb
