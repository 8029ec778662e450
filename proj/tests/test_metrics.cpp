#include <algorithm>
#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include <fgb/metrics.hpp>
#include <fgb/rng.hpp>

#include "test_util.hpp"

using namespace fgb;
using testutil::random_labels;

namespace {

// Brute-force ACC: maximize matches over every injective mapping from
// predicted ids to true ids (feasible for k <= 6).
double factorial_acc(const std::vector<int>& t, const std::vector<int>& p) {
    const auto table = contingency(t, p);
    const std::size_t s = std::max(table.k_true(), table.k_pred());
    std::vector<int> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    long long best = 0;
    do {
        long long matched = 0;
        for (std::size_t j = 0; j < table.k_pred(); ++j) {
            const auto i = static_cast<std::size_t>(perm[j]);
            if (i < table.k_true()) matched += table.counts[i][j];
        }
        best = std::max(best, matched);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(t.size());
}

// Pair-counting ARI over all O(n^2) pairs.
double pair_ari(const std::vector<int>& t, const std::vector<int>& p) {
    const std::size_t n = t.size();
    double a = 0, b = 0, c = 0, d = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_t = t[i] == t[j];
            const bool same_p = p[i] == p[j];
            if (same_t && same_p) ++a;
            else if (same_t) ++b;
            else if (same_p) ++c;
            else ++d;
        }
    const double total = a + b + c + d;
    const double expected = (a + b) * (a + c) / total;
    const double max_index = ((a + b) + (a + c)) / 2.0;
    if (max_index == expected) return 1.0;  // degenerate; unused in these tests
    return (a - expected) / (max_index - expected);
}

}  // namespace

TEST_CASE("contingency: small enumerations") {
    auto diag = contingency({0, 0, 1, 1}, {0, 0, 1, 1});
    CHECK(diag.counts == std::vector<std::vector<long long>>{{2, 0}, {0, 2}});

    auto anti = contingency({0, 0, 1, 1}, {1, 1, 0, 0});
    CHECK(anti.counts == std::vector<std::vector<long long>>{{0, 2}, {2, 0}});

    auto ones = contingency({0, 1, 0, 1}, {0, 0, 1, 1});
    CHECK(ones.counts == std::vector<std::vector<long long>>{{1, 1}, {1, 1}});
    CHECK(ones.row_sums == std::vector<long long>{2, 2});
    CHECK(ones.col_sums == std::vector<long long>{2, 2});
    CHECK(ones.total == 4);

    CHECK_THROWS_AS(contingency({0, 1}, {0}), std::invalid_argument);
}

TEST_CASE("accuracy: identity, permutation, half") {
    CHECK(accuracy({0, 1, 2, 0}, {0, 1, 2, 0}) == 1.0);
    CHECK(accuracy({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0);
    CHECK(accuracy({0, 0, 1, 1}, {0, 1, 0, 1}) == 0.5);
}

TEST_CASE("accuracy: matches the factorial oracle") {
    detail::Rng rng(41);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 5 + rng.next_below(60);
        const int kt = 1 + static_cast<int>(rng.next_below(6));
        const int kp = 1 + static_cast<int>(rng.next_below(6));
        const auto t = random_labels(rng, n, kt);
        const auto p = random_labels(rng, n, kp);
        CHECK(accuracy(t, p) == factorial_acc(t, p));
    }
}

TEST_CASE("nmi: known values and conventions") {
    CHECK_THAT(nmi({0, 0, 1, 1}, {0, 0, 1, 1}),
               Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(nmi({0, 0, 1, 1}, {1, 1, 0, 0}),  // permutation invariant
               Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == 0.0);  // independent
    CHECK(nmi({0, 0, 0}, {0, 0, 0}) == 1.0);        // both trivial
    CHECK(nmi({0, 0, 0}, {0, 1, 2}) == 0.0);        // exactly one trivial
}

TEST_CASE("nmi: symmetric and bounded") {
    detail::Rng rng(43);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 4 + rng.next_below(80);
        const auto t = random_labels(rng, n, 1 + rng.next_below(5));
        const auto p = random_labels(rng, n, 1 + rng.next_below(5));
        const double forward = nmi(t, p);
        CHECK_THAT(nmi(p, t), Catch::Matchers::WithinAbs(forward, 1e-12));
        CHECK(forward >= 0.0);
        CHECK(forward <= 1.0);
    }
}

TEST_CASE("ari: known values") {
    CHECK(ari({0, 0, 1, 1}, {0, 0, 1, 1}) == 1.0);
    CHECK(ari({0, 0, 1, 1}, {0, 0, 0, 0}) == 0.0);  // trivial prediction
    const double value = ari({0, 0, 0, 1, 1, 1}, {0, 0, 1, 1, 2, 2});
    CHECK_THAT(value,
               Catch::Matchers::WithinAbs(
                   pair_ari({0, 0, 0, 1, 1, 1}, {0, 0, 1, 1, 2, 2}), 1e-12));
}

TEST_CASE("ari: degenerate conventions") {
    CHECK(ari({0, 0, 0}, {1, 1, 1}) == 1.0);  // identical up to relabeling
    CHECK(ari({0, 1, 2}, {2, 0, 1}) == 1.0);  // all-singletons both sides
    CHECK(ari({0, 0, 1}, {2, 2, 2}) == 0.0);  // trivial pred, nontrivial truth
}

TEST_CASE("ari: matches the pair-counting oracle") {
    detail::Rng rng(47);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 10 + rng.next_below(190);
        const auto t = random_labels(rng, n, 2 + rng.next_below(4));
        const auto p = random_labels(rng, n, 2 + rng.next_below(4));
        CHECK_THAT(ari(t, p), Catch::Matchers::WithinAbs(pair_ari(t, p), 1e-12));
    }
}

TEST_CASE("metrics: invariant under relabeling of either side") {
    detail::Rng rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 8 + rng.next_below(40);
        const int k = 2 + static_cast<int>(rng.next_below(4));
        const auto t = random_labels(rng, n, k);
        const auto p = random_labels(rng, n, k);

        std::vector<int> shuffle(k);
        std::iota(shuffle.begin(), shuffle.end(), 0);
        for (int i = k; i > 1; --i)
            std::swap(shuffle[i - 1], shuffle[rng.next_below(i)]);
        auto p2 = p;
        for (auto& l : p2) l = shuffle[static_cast<std::size_t>(l)] + 100;

        CHECK_THAT(accuracy(t, p2), Catch::Matchers::WithinAbs(accuracy(t, p), 1e-15));
        CHECK_THAT(nmi(t, p2), Catch::Matchers::WithinAbs(nmi(t, p), 1e-12));
        CHECK_THAT(ari(t, p2), Catch::Matchers::WithinAbs(ari(t, p), 1e-12));
    }
}
