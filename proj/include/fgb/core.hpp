#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgb {

// Dense row-major matrix of doubles. Rows are points, centers, or membership
// vectors depending on context.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<double> row(std::size_t r) {
        return {data.data() + r * cols, cols};
    }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
};

// n x c matrix of membership degrees; rows sum to 1.
using MembershipMatrix = Matrix;
// c x d matrix of cluster prototypes.
using CenterSet = Matrix;

struct Dataset {
    Matrix points;
    std::optional<std::vector<int>> labels;

    std::size_t n() const { return points.rows; }
    std::size_t d() const { return points.cols; }
};

struct FuzzyGranularBall {
    std::vector<std::size_t> member_indices;  // kept sorted ascending
    std::vector<double> center;
    double radius = 0.0;
    double sum_dist = 0.0;
    double dm = 0.0;
    std::size_t size = 0;
};

struct ClusteringResult {
    std::vector<int> point_labels;
    std::vector<int> ball_labels;            // empty for non-ball methods
    std::vector<FuzzyGranularBall> balls;    // empty for non-ball methods
    std::size_t n_clusters = 0;
    int iterations = 0;
    double runtime_seconds = 0.0;
};

// An FCM update produced a cluster no point belongs to.
struct DegenerateClusterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad CLI/run configuration (missing or contradictory options).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable or malformed input data.
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("distance: dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

inline FuzzyGranularBall ball_stats(const Dataset& data,
                                    std::vector<std::size_t> member_indices) {
    if (member_indices.empty())
        throw std::invalid_argument("ball_stats: empty member set");
    std::sort(member_indices.begin(), member_indices.end());
    for (std::size_t idx : member_indices)
        if (idx >= data.n())
            throw std::invalid_argument("ball_stats: member index out of range");

    FuzzyGranularBall ball;
    ball.size = member_indices.size();
    ball.center.assign(data.d(), 0.0);
    for (std::size_t idx : member_indices) {
        auto p = data.points.row(idx);
        for (std::size_t j = 0; j < data.d(); ++j) ball.center[j] += p[j];
    }
    for (double& v : ball.center) v /= static_cast<double>(ball.size);

    for (std::size_t idx : member_indices) {
        const double dist = distance(data.points.row(idx), ball.center);
        ball.sum_dist += dist;
        ball.radius = std::max(ball.radius, dist);
    }
    ball.dm = ball.sum_dist / static_cast<double>(ball.size);
    ball.member_indices = std::move(member_indices);
    return ball;
}

// Member index maximizing distance to `from`; ties go to the smallest index.
inline std::size_t farthest_point(const Dataset& data,
                                  const std::vector<std::size_t>& members,
                                  std::span<const double> from) {
    if (members.empty())
        throw std::invalid_argument("farthest_point: empty member set");
    std::size_t best = members.front();
    double best_dist = -1.0;
    for (std::size_t idx : members) {
        const double dist = distance(data.points.row(idx), from);
        if (dist > best_dist || (dist == best_dist && idx < best)) {
            best_dist = dist;
            best = idx;
        }
    }
    return best;
}

}  // namespace fgb
