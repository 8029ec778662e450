#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fgb/core.hpp"
#include "fgb/rng.hpp"

namespace fgb {

struct FcmConfig {
    double fuzzifier_m = 2.0;
    int max_iter = 100;
    double tol = 1e-6;  // convergence threshold on center movement
    std::uint64_t seed = 0;
};

struct FcmResult {
    MembershipMatrix U;
    CenterSet V;
    int iterations = 0;
};

inline double objective(const Dataset& data, const MembershipMatrix& U,
                        const CenterSet& V, double m) {
    if (U.rows != data.n() || U.cols != V.rows || V.cols != data.d())
        throw std::invalid_argument("objective: shape mismatch");
    const bool squared = m == 2.0;
    double j = 0.0;
    for (std::size_t i = 0; i < V.rows; ++i) {
        for (std::size_t p = 0; p < data.n(); ++p) {
            const double dist = distance(data.points.row(p), V.row(i));
            const double u = U(p, i);
            j += (squared ? u * u : std::pow(u, m)) * dist * dist;
        }
    }
    return j;
}

namespace detail {

// Fills one membership row for point p, leaving its squared distances to the
// centers in sq. m = 2 makes the exponent exactly 2, so each ratio term is a
// plain quotient of squared distances — no pow or sqrt on the hot path — and
// two centers collapse to a single normalization.
inline void membership_row(std::span<const double> p, const CenterSet& V,
                           double expo, bool quadratic,
                           std::vector<double>& sq, std::span<double> out) {
    const std::size_t c = V.rows, d = V.cols;
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < c; ++i) {
        auto v = V.row(i);
        double acc = 0.0;
        for (std::size_t x = 0; x < d; ++x) {
            const double diff = p[x] - v[x];
            acc += diff * diff;
        }
        sq[i] = acc;
        if (acc == 0.0) ++zeros;
    }
    if (zeros > 0) {
        // Point sits on one or more centers: all membership goes there,
        // split equally when several coincide.
        for (std::size_t i = 0; i < c; ++i)
            out[i] = sq[i] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
        return;
    }
    if (quadratic) {
        if (c == 2) {
            const double total = sq[0] + sq[1];
            out[0] = sq[1] / total;
            out[1] = sq[0] / total;
            return;
        }
        for (std::size_t i = 0; i < c; ++i) {
            double denom = 0.0;
            for (std::size_t k = 0; k < c; ++k) denom += sq[i] / sq[k];
            out[i] = 1.0 / denom;
        }
    } else {
        for (std::size_t i = 0; i < c; ++i) sq[i] = std::sqrt(sq[i]);
        for (std::size_t i = 0; i < c; ++i) {
            double denom = 0.0;
            for (std::size_t k = 0; k < c; ++k)
                denom += std::pow(sq[i] / sq[k], expo);
            out[i] = 1.0 / denom;
        }
    }
}

// Core of update_membership, writing into a preallocated U (n x c) with a
// c-sized scratch buffer, so the fit loop never reallocates.
inline void membership_into(const Dataset& data, const CenterSet& V, double m,
                            MembershipMatrix& U, std::vector<double>& sq) {
    const double expo = 2.0 / (m - 1.0);
    const bool quadratic = expo == 2.0;
    for (std::size_t j = 0; j < data.n(); ++j)
        membership_row(data.points.row(j), V, expo, quadratic, sq, U.row(j));
}

// Core of update_centers, writing into a preallocated V (c x d).
inline void centers_into(const Dataset& data, const MembershipMatrix& U,
                         double m, CenterSet& V, std::vector<double>& wsum) {
    const std::size_t n = data.n(), c = U.cols, d = data.d();
    const bool squared = m == 2.0;
    std::fill(V.data.begin(), V.data.end(), 0.0);
    wsum.assign(c, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        auto p = data.points.row(j);
        for (std::size_t i = 0; i < c; ++i) {
            const double u = U(j, i);
            const double w = squared ? u * u : std::pow(u, m);
            wsum[i] += w;
            for (std::size_t k = 0; k < d; ++k) V(i, k) += w * p[k];
        }
    }
    for (std::size_t i = 0; i < c; ++i) {
        if (wsum[i] == 0.0)
            throw DegenerateClusterError("update_centers: cluster " +
                                         std::to_string(i) +
                                         " has no support (all-zero column)");
        for (std::size_t k = 0; k < d; ++k) V(i, k) /= wsum[i];
    }
}

// One full fit iteration in a single pass over the data: memberships from V
// are written into U, and at the same time the centers those memberships
// induce are accumulated into Vn. Identical arithmetic to calling
// membership_into followed by centers_into, with half the memory traffic.
inline void fcm_step(const Dataset& data, const CenterSet& V, double m,
                     MembershipMatrix& U, CenterSet& Vn,
                     std::vector<double>& sq, std::vector<double>& wsum) {
    const std::size_t n = data.n(), c = V.rows, d = data.d();
    const double expo = 2.0 / (m - 1.0);
    const bool quadratic = expo == 2.0;
    const bool squared = m == 2.0;
    std::fill(Vn.data.begin(), Vn.data.end(), 0.0);
    wsum.assign(c, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        auto p = data.points.row(j);
        auto u = U.row(j);
        membership_row(p, V, expo, quadratic, sq, u);
        for (std::size_t i = 0; i < c; ++i) {
            const double w = squared ? u[i] * u[i] : std::pow(u[i], m);
            wsum[i] += w;
            for (std::size_t k = 0; k < d; ++k) Vn(i, k) += w * p[k];
        }
    }
    for (std::size_t i = 0; i < c; ++i) {
        if (wsum[i] == 0.0)
            throw DegenerateClusterError("fcm_fit: cluster " +
                                         std::to_string(i) +
                                         " has no support (all-zero column)");
        for (std::size_t k = 0; k < d; ++k) Vn(i, k) /= wsum[i];
    }
}

}  // namespace detail

inline MembershipMatrix update_membership(const Dataset& data, const CenterSet& V,
                                          double m) {
    if (V.cols != data.d())
        throw std::invalid_argument("update_membership: shape mismatch");
    MembershipMatrix U(data.n(), V.rows);
    std::vector<double> sq(V.rows);
    detail::membership_into(data, V, m, U, sq);
    return U;
}

inline CenterSet update_centers(const Dataset& data, const MembershipMatrix& U,
                                double m) {
    if (U.rows != data.n())
        throw std::invalid_argument("update_centers: shape mismatch");
    CenterSet V(U.cols, data.d());
    std::vector<double> wsum(U.cols, 0.0);
    detail::centers_into(data, U, m, V, wsum);
    return V;
}

inline FcmResult fcm_fit(const Dataset& data, std::size_t c,
                         const FcmConfig& config = {},
                         const std::optional<CenterSet>& init = std::nullopt) {
    if (c < 1 || c > data.n())
        throw std::invalid_argument("fcm_fit: need 1 <= c <= n");
    CenterSet V;
    if (init) {
        if (init->rows != c || init->cols != data.d())
            throw std::invalid_argument("fcm_fit: init has wrong shape");
        V = *init;
    } else {
        detail::Rng rng(config.seed);
        V = CenterSet(c, data.d());
        const auto picks = rng.pick_distinct(data.n(), c);
        for (std::size_t i = 0; i < c; ++i) {
            auto p = data.points.row(picks[i]);
            std::copy(p.begin(), p.end(), V.row(i).begin());
        }
    }

    // All buffers are allocated once and rewritten in place each iteration.
    MembershipMatrix U(data.n(), c);
    CenterSet Vn(c, data.d());
    std::vector<double> sq(c);
    std::vector<double> wsum(c);
    int iterations = 0;
    for (int t = 0; t < config.max_iter; ++t) {
        detail::fcm_step(data, V, config.fuzzifier_m, U, Vn, sq, wsum);
        iterations = t + 1;
        double shift = 0.0;
        for (std::size_t i = 0; i < c; ++i)
            shift = std::max(shift, distance(Vn.row(i), V.row(i)));
        std::swap(V.data, Vn.data);
        if (shift < config.tol) break;
    }
    // Inside the loop U always describes the previous centers; refresh it so
    // the returned memberships match the returned centers.
    detail::membership_into(data, V, config.fuzzifier_m, U, sq);
    return {std::move(U), std::move(V), iterations};
}

// Per-row argmax; ties go to the smallest cluster index.
inline std::vector<int> hard_labels(const MembershipMatrix& U) {
    std::vector<int> labels(U.rows);
    for (std::size_t j = 0; j < U.rows; ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < U.cols; ++i)
            if (U(j, i) > U(j, best)) best = i;
        labels[j] = static_cast<int>(best);
    }
    return labels;
}

}  // namespace fgb
