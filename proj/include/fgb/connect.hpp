#pragma once

#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "fgb/core.hpp"
#include "fgb/rng.hpp"

namespace fgb {

struct KmeansResult {
    std::vector<int> labels;
    Matrix centers;
    int iterations = 0;
};

// Lloyd's algorithm with seeded distinct-point initialization. A cluster that
// ends an assignment round empty is reseeded to the point farthest from its
// current center and the round is redone.
inline KmeansResult kmeans_fit(const Matrix& points, std::size_t k,
                               std::uint64_t seed = 0, int max_iter = 100) {
    const std::size_t m = points.rows, d = points.cols;
    if (k < 1 || k > m)
        throw std::invalid_argument("kmeans_fit: need 1 <= k <= number of points");

    detail::Rng rng(seed);
    Matrix centers(k, d);
    const auto picks = rng.pick_distinct(m, k);
    for (std::size_t i = 0; i < k; ++i) {
        auto p = points.row(picks[i]);
        std::copy(p.begin(), p.end(), centers.row(i).begin());
    }

    auto assign = [&](std::vector<int>& out) {
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t best = 0;
            double best_dist = distance(points.row(j), centers.row(0));
            for (std::size_t i = 1; i < k; ++i) {
                const double dist = distance(points.row(j), centers.row(i));
                if (dist < best_dist) {
                    best_dist = dist;
                    best = i;
                }
            }
            out[j] = static_cast<int>(best);
        }
    };

    std::vector<int> labels(m, -1), next(m, -1);
    std::vector<std::size_t> counts(k);
    int iterations = 0;
    for (int t = 0; t < max_iter; ++t) {
        assign(next);
        for (std::size_t round = 0; round < k; ++round) {
            counts.assign(k, 0);
            for (int l : next) ++counts[static_cast<std::size_t>(l)];
            bool any_empty = false;
            for (std::size_t i = 0; i < k; ++i) {
                if (counts[i] > 0) continue;
                any_empty = true;
                std::size_t far = 0;
                double far_dist = -1.0;
                for (std::size_t j = 0; j < m; ++j) {
                    const double dist = distance(points.row(j), centers.row(i));
                    if (dist > far_dist) {
                        far_dist = dist;
                        far = j;
                    }
                }
                auto p = points.row(far);
                std::copy(p.begin(), p.end(), centers.row(i).begin());
            }
            if (!any_empty) break;
            assign(next);
        }
        iterations = t + 1;
        if (next == labels) break;
        labels = next;
        for (std::size_t i = 0; i < k; ++i) counts[i] = 0;
        Matrix sums(k, d);
        for (std::size_t j = 0; j < m; ++j) {
            const auto i = static_cast<std::size_t>(labels[j]);
            ++counts[i];
            auto p = points.row(j);
            for (std::size_t x = 0; x < d; ++x) sums(i, x) += p[x];
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (counts[i] == 0) continue;
            for (std::size_t x = 0; x < d; ++x)
                centers(i, x) = sums(i, x) / static_cast<double>(counts[i]);
        }
    }
    return {std::move(labels), std::move(centers), iterations};
}

// Cluster the ball centers with K-means; every ball, and every point in it,
// takes its center's label.
inline ClusteringResult connect_kmeans(const Dataset& data,
                                       const std::vector<FuzzyGranularBall>& balls,
                                       std::size_t k, std::uint64_t seed = 0,
                                       int max_iter = 100) {
    if (k > balls.size())
        throw std::invalid_argument(
            "connect_kmeans: k exceeds the number of balls (" +
            std::to_string(balls.size()) +
            "); lower k or loosen ball generation");
    Matrix centers(balls.size(), data.d());
    for (std::size_t b = 0; b < balls.size(); ++b)
        std::copy(balls[b].center.begin(), balls[b].center.end(),
                  centers.row(b).begin());
    KmeansResult km = kmeans_fit(centers, k, seed, max_iter);

    ClusteringResult result;
    result.ball_labels = std::move(km.labels);
    result.balls = balls;
    result.n_clusters = k;
    result.iterations = km.iterations;
    result.point_labels.assign(data.n(), -1);
    for (std::size_t b = 0; b < balls.size(); ++b)
        for (std::size_t idx : balls[b].member_indices)
            result.point_labels[idx] = result.ball_labels[b];
    return result;
}

// Gap between two ball surfaces must undercut this for the pair to count as
// adjacent; the more raw overlaps the pair already has, the stricter it gets.
inline double adjacency_threshold(const FuzzyGranularBall& a,
                                  const FuzzyGranularBall& b, int o_a, int o_b) {
    return std::min(a.radius, b.radius) / (1.0 + static_cast<double>(std::min(o_a, o_b)));
}

inline bool adjacent(const FuzzyGranularBall& a, const FuzzyGranularBall& b,
                     double tau) {
    const double gap = distance(a.center, b.center) - (a.radius + b.radius);
    return gap < tau;
}

struct OverlapGraph {
    std::size_t n_balls = 0;
    std::vector<int> overlap_counts;                         // raw pass-1 counts
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // final adjacency, i < j
};

// Pass 1: raw overlap counts with the count-free threshold min(r_i, r_j).
// Pass 2: adjacency under the count-adjusted threshold.
// Pass 3: balls the thresholded pass left isolated attach to their nearest
// ball by center distance, so no ball ends with degree zero.
inline OverlapGraph build_overlap_graph(const std::vector<FuzzyGranularBall>& balls) {
    const std::size_t m = balls.size();
    OverlapGraph graph;
    graph.n_balls = m;
    graph.overlap_counts.assign(m, 0);

    std::vector<double> gap(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double g = distance(balls[i].center, balls[j].center) -
                             (balls[i].radius + balls[j].radius);
            gap[i * m + j] = g;
            if (g < std::min(balls[i].radius, balls[j].radius)) {
                ++graph.overlap_counts[i];
                ++graph.overlap_counts[j];
            }
        }
    }

    std::vector<int> degree(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double tau = adjacency_threshold(balls[i], balls[j],
                                                   graph.overlap_counts[i],
                                                   graph.overlap_counts[j]);
            if (gap[i * m + j] < tau) {
                graph.edges.emplace_back(i, j);
                ++degree[i];
                ++degree[j];
            }
        }
    }

    if (m >= 2) {
        // Every ball the thresholded pass left isolated gains an edge, even
        // when an earlier attachment already reached it.
        for (std::size_t i = 0; i < m; ++i) {
            if (degree[i] > 0) continue;
            std::size_t nearest = i == 0 ? 1 : 0;
            double nearest_dist = distance(balls[i].center, balls[nearest].center);
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                const double dist = distance(balls[i].center, balls[j].center);
                if (dist < nearest_dist) {
                    nearest_dist = dist;
                    nearest = j;
                }
            }
            const auto edge = std::minmax(i, nearest);
            graph.edges.emplace_back(edge.first, edge.second);
        }
        std::sort(graph.edges.begin(), graph.edges.end());
        graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()),
                          graph.edges.end());
    }
    return graph;
}

// Connected components of the overlap graph become the clusters; the cluster
// count is emergent. Component ids follow the smallest ball index they contain.
inline ClusteringResult connect_overlap(const Dataset& data,
                                        const std::vector<FuzzyGranularBall>& balls) {
    if (balls.empty())
        throw std::invalid_argument("connect_overlap: empty ball list");
    const std::size_t m = balls.size();
    const OverlapGraph graph = build_overlap_graph(balls);

    std::vector<std::vector<std::size_t>> adj(m);
    for (const auto& [i, j] : graph.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }

    std::vector<int> comp(m, -1);
    int n_comps = 0;
    for (std::size_t start = 0; start < m; ++start) {
        if (comp[start] >= 0) continue;
        comp[start] = n_comps;
        std::queue<std::size_t> frontier;
        frontier.push(start);
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t v : adj[u]) {
                if (comp[v] < 0) {
                    comp[v] = n_comps;
                    frontier.push(v);
                }
            }
        }
        ++n_comps;
    }

    ClusteringResult result;
    result.ball_labels = std::move(comp);
    result.balls = balls;
    result.n_clusters = static_cast<std::size_t>(n_comps);
    result.iterations = 0;
    result.point_labels.assign(data.n(), -1);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t idx : balls[b].member_indices)
            result.point_labels[idx] = result.ball_labels[b];
    return result;
}

}  // namespace fgb
