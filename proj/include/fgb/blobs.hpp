#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fgb/core.hpp"
#include "fgb/rng.hpp"

namespace fgb {

// Isotropic Gaussian blobs with labeled points. Cluster centers are drawn
// uniformly in a box and rejected until pairwise separation reaches 8x the
// spread; the box doubles whenever 1000 consecutive candidates fail, so
// generation terminates for any k.
inline Dataset make_blobs(std::size_t n_per_cluster, std::size_t k, std::size_t d,
                          double spread, std::uint64_t seed = 0) {
    if (n_per_cluster < 1 || k < 1 || d < 1 || !(spread > 0.0))
        throw std::invalid_argument("make_blobs: all parameters must be positive");

    detail::Rng rng(seed);
    double box = 10.0 * spread *
                 std::max(1.0, std::pow(static_cast<double>(k),
                                        1.0 / static_cast<double>(d)));
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    int failures = 0;
    while (centers.size() < k) {
        std::vector<double> cand(d);
        for (double& v : cand) v = (2.0 * rng.next_unit() - 1.0) * box;
        bool ok = true;
        for (const auto& c : centers) {
            if (distance(cand, c) < 8.0 * spread) {
                ok = false;
                break;
            }
        }
        if (ok) {
            centers.push_back(std::move(cand));
            failures = 0;
        } else if (++failures >= 1000) {
            box *= 2.0;
            failures = 0;
        }
    }

    Dataset data;
    data.points = Matrix(n_per_cluster * k, d);
    std::vector<int> labels(n_per_cluster * k);
    std::size_t row = 0;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < n_per_cluster; ++i, ++row) {
            for (std::size_t j = 0; j < d; ++j)
                data.points(row, j) = centers[c][j] + spread * rng.next_normal();
            labels[row] = static_cast<int>(c);
        }
    }
    data.labels = std::move(labels);
    return data;
}

}  // namespace fgb
