#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fgb/core.hpp"

namespace fgb {

struct ContingencyTable {
    std::vector<std::vector<long long>> counts;  // k_true x k_pred
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long total = 0;

    std::size_t k_true() const { return counts.size(); }
    std::size_t k_pred() const { return counts.empty() ? 0 : counts[0].size(); }
};

namespace detail {

// Re-index arbitrary label values onto 0..k-1, keeping their numeric order.
inline std::vector<int> dense_ids(const std::vector<int>& labels) {
    std::vector<int> values = labels;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        out[i] = static_cast<int>(
            std::lower_bound(values.begin(), values.end(), labels[i]) -
            values.begin());
    return out;
}

// Minimum-cost assignment on a square cost matrix (Hungarian method with
// potentials, O(s^3)). Returns row -> column.
inline std::vector<int> assignment(const std::vector<std::vector<long long>>& cost) {
    const int s = static_cast<int>(cost.size());
    const long long INF = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(s + 1, 0), v(s + 1, 0);
    std::vector<int> match(s + 1, 0), way(s + 1, 0);
    for (int i = 1; i <= s; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<long long> minv(s + 1, INF);
        std::vector<char> used(s + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = 0;
            long long delta = INF;
            for (int j = 1; j <= s; ++j) {
                if (used[j]) continue;
                const long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= s; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(s, -1);
    for (int j = 1; j <= s; ++j)
        if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

}  // namespace detail

inline ContingencyTable contingency(const std::vector<int>& true_labels,
                                    const std::vector<int>& pred_labels) {
    if (true_labels.size() != pred_labels.size())
        throw std::invalid_argument("contingency: label length mismatch");
    if (true_labels.empty())
        throw std::invalid_argument("contingency: empty labels");
    const auto t = detail::dense_ids(true_labels);
    const auto p = detail::dense_ids(pred_labels);
    int kt = 0, kp = 0;
    for (int v : t) kt = std::max(kt, v + 1);
    for (int v : p) kp = std::max(kp, v + 1);

    ContingencyTable table;
    table.counts.assign(kt, std::vector<long long>(kp, 0));
    table.row_sums.assign(kt, 0);
    table.col_sums.assign(kp, 0);
    table.total = static_cast<long long>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        ++table.counts[t[i]][p[i]];
        ++table.row_sums[t[i]];
        ++table.col_sums[p[i]];
    }
    return table;
}

// Fraction of points whose predicted label, under the best one-to-one
// relabeling, matches the true label. Solved exactly via optimal assignment
// on the contingency table (padded square when cluster counts differ).
inline double accuracy(const std::vector<int>& true_labels,
                       const std::vector<int>& pred_labels) {
    const ContingencyTable table = contingency(true_labels, pred_labels);
    const std::size_t s = std::max(table.k_true(), table.k_pred());
    std::vector<std::vector<long long>> cost(s, std::vector<long long>(s, 0));
    for (std::size_t i = 0; i < table.k_true(); ++i)
        for (std::size_t j = 0; j < table.k_pred(); ++j)
            cost[i][j] = -table.counts[i][j];
    const auto row_to_col = detail::assignment(cost);
    long long matched = 0;
    for (std::size_t i = 0; i < table.k_true(); ++i) {
        const auto j = static_cast<std::size_t>(row_to_col[i]);
        if (j < table.k_pred()) matched += table.counts[i][j];
    }
    return static_cast<double>(matched) / static_cast<double>(table.total);
}

// Normalized mutual information, 2*MI / (H_true + H_pred), natural logs.
// Both partitions trivial -> 1 by convention; exactly one trivial -> 0.
inline double nmi(const std::vector<int>& true_labels,
                  const std::vector<int>& pred_labels) {
    const ContingencyTable table = contingency(true_labels, pred_labels);
    const double n = static_cast<double>(table.total);
    auto entropy = [n](const std::vector<long long>& sums) {
        double h = 0.0;
        for (long long s : sums) {
            if (s == 0) continue;
            const double p = static_cast<double>(s) / n;
            h -= p * std::log(p);
        }
        return h;
    };
    const double ht = entropy(table.row_sums);
    const double hp = entropy(table.col_sums);
    if (ht == 0.0 && hp == 0.0) return 1.0;
    if (ht == 0.0 || hp == 0.0) return 0.0;

    double mi = 0.0;
    for (std::size_t i = 0; i < table.k_true(); ++i) {
        for (std::size_t j = 0; j < table.k_pred(); ++j) {
            const long long nij = table.counts[i][j];
            if (nij == 0) continue;
            const double pij = static_cast<double>(nij) / n;
            mi += pij * std::log(n * static_cast<double>(nij) /
                                 (static_cast<double>(table.row_sums[i]) *
                                  static_cast<double>(table.col_sums[j])));
        }
    }
    const double value = 2.0 * mi / (ht + hp);
    return std::min(1.0, std::max(0.0, value));
}

// Adjusted Rand index via pair counting on the contingency table. When the
// adjustment denominator vanishes (both partitions trivial), the result is 1
// for partitions identical up to relabeling and 0 otherwise.
inline double ari(const std::vector<int>& true_labels,
                  const std::vector<int>& pred_labels) {
    const ContingencyTable table = contingency(true_labels, pred_labels);
    auto comb2 = [](long long x) {
        return static_cast<long double>(x) * static_cast<long double>(x - 1) / 2.0L;
    };
    long double index = 0.0L;
    for (const auto& row : table.counts)
        for (long long nij : row) index += comb2(nij);
    long double sum_rows = 0.0L, sum_cols = 0.0L;
    for (long long s : table.row_sums) sum_rows += comb2(s);
    for (long long s : table.col_sums) sum_cols += comb2(s);
    const long double pairs = comb2(table.total);
    const long double expected = pairs > 0.0L ? sum_rows * sum_cols / pairs : 0.0L;
    const long double max_index = (sum_rows + sum_cols) / 2.0L;
    const long double denom = max_index - expected;
    if (denom == 0.0L) {
        // Identical up to relabeling means one nonzero cell per row and column.
        bool identical = table.k_true() == table.k_pred();
        for (std::size_t i = 0; identical && i < table.k_true(); ++i) {
            int nonzero = 0;
            for (std::size_t j = 0; j < table.k_pred(); ++j)
                if (table.counts[i][j] > 0) ++nonzero;
            identical = nonzero == 1;
        }
        std::vector<int> col_nonzero(table.k_pred(), 0);
        for (std::size_t i = 0; i < table.k_true(); ++i)
            for (std::size_t j = 0; j < table.k_pred(); ++j)
                if (table.counts[i][j] > 0) ++col_nonzero[j];
        for (int c : col_nonzero) identical = identical && c == 1;
        return identical ? 1.0 : 0.0;
    }
    return static_cast<double>((index - expected) / denom);
}

struct MetricsReport {
    std::optional<double> acc;
    std::optional<double> nmi;
    std::optional<double> ari;
    double runtime_seconds = 0.0;
    std::optional<std::size_t> n_balls;
    std::size_t n_clusters = 0;
};

}  // namespace fgb
