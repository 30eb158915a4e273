#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "zsf/zerosum.hpp"

using namespace zsf;

namespace {

// exponential-time oracle: maximum number of disjoint zero-sum sub-multisets,
// by trying every nonempty zero-sum part at each step
int max_disjoint_brute(const GMultiSet& ms) {
    const GroupSpec& g = ms.group();
    int order = static_cast<int>(g.order());
    std::vector<int> counts = ms.counts();
    std::function<int()> best = [&]() -> int {
        // enumerate nonempty sub-multisets of counts summing to zero
        int result = 0;
        std::vector<int> part(static_cast<size_t>(order), 0);
        std::function<void(int, int, int)> rec = [&](int e, int sum, int card) {
            if (e == order) {
                if (card > 0 && sum == 0) {
                    for (int i = 0; i < order; ++i) counts[static_cast<size_t>(i)] -= part[static_cast<size_t>(i)];
                    result = std::max(result, 1 + best());
                    for (int i = 0; i < order; ++i) counts[static_cast<size_t>(i)] += part[static_cast<size_t>(i)];
                }
                return;
            }
            for (int c = 0; c <= counts[static_cast<size_t>(e)]; ++c) {
                part[static_cast<size_t>(e)] = c;
                rec(e + 1, g.add(sum, g.scale(e, c)), card + c);
            }
            part[static_cast<size_t>(e)] = 0;
        };
        rec(0, 0, 0);
        return result;
    };
    return best();
}

}  // namespace

TEST_CASE("zero-sum freeness basics") {
    auto g = GroupSpec::parse("5");
    auto zsf5 = GMultiSet::parse(g, "1^4");
    CHECK(is_zero_sum_free(zsf5));
    auto not_zsf = GMultiSet::parse(g, "1^5");
    CHECK_FALSE(is_zero_sum_free(not_zsf));
    CHECK(has_short_zero_sum(not_zsf, 5));
    CHECK_FALSE(has_short_zero_sum(GMultiSet::parse(g, "2^2"), 2));
    CHECK(has_short_zero_sum(GMultiSet::parse(g, "2 3"), 2));
}

TEST_CASE("subset sums characteristic vector") {
    auto g = GroupSpec::parse("4");
    auto ms = GMultiSet::parse(g, "1 2");
    auto sums = subset_sums(ms);
    CHECK(sums[1]);
    CHECK(sums[2]);
    CHECK(sums[3]);
    CHECK_FALSE(sums[0]);
}

TEST_CASE("davenport constants of small groups") {
    // D(Z_n) = n; D(G) = M(G) for rank <= 2
    CHECK(davenport(GroupSpec::parse("2")).value == 2);
    CHECK(davenport(GroupSpec::parse("7")).value == 7);
    CHECK(davenport(GroupSpec::parse("2,2")).value == 3);
    CHECK(davenport(GroupSpec::parse("3,3")).value == 5);
    CHECK(davenport(GroupSpec::parse("2,4")).value == 5);
    auto r = davenport(GroupSpec::parse("3,3"));
    CHECK(r.witness.cardinality() == 4);
    CHECK(is_zero_sum_free(r.witness));
}

TEST_CASE("disjoint zero-sum thresholds over Z_3^2") {
    for (int m = 1; m <= 3; ++m) {
        auto r = davenport_m(GroupSpec::elementary(3, 2), m);
        CHECK(r.value == 3 * m + 2);
        CHECK(r.witness.cardinality() == 3 * m + 1);
        CHECK(max_disjoint_zero_sums(r.witness, m) < m);
    }
}

TEST_CASE("short zero-sum thresholds") {
    // over Z_3^2: 4 distinct nonzero elements contain a short zero-sum, and
    // doubling the maximal 3-element configurations gives the extremal 7 - 1
    auto r = davenport_short(GroupSpec::elementary(3, 2), 3);
    CHECK(r.value == 7);
    CHECK(c_const(3, 2) == 4);
}

TEST_CASE("max_disjoint_zero_sums agrees with the exponential oracle") {
    std::mt19937 rng(99);
    for (auto spec : {"4", "2,2", "5", "3,3"}) {
        auto g = GroupSpec::parse(spec);
        std::uniform_int_distribution<int> elem(0, static_cast<int>(g.order()) - 1);
        for (int iter = 0; iter < 40; ++iter) {
            GMultiSet ms(g);
            int card = 1 + iter % 6;
            for (int i = 0; i < card; ++i) ms.add(elem(rng));
            int brute = max_disjoint_brute(ms);
            CHECK(max_disjoint_zero_sums(ms, 10) == brute);
            auto sys = find_disjoint_zero_sums(ms, 10);
            CHECK(static_cast<int>(sys.parts.size()) == brute);
            GMultiSet used(g);
            for (const auto& part : sys.parts) {
                CHECK(sum_of(part) == GElem{std::vector<int>(g.rank(), 0)});
                for (int e : part.support()) used.add(e, part.count(e));
            }
            for (int e = 0; e < g.order(); ++e) CHECK(used.count(e) <= ms.count(e));
        }
    }
}

TEST_CASE("budget errors surface instead of wrong answers") {
    CHECK_THROWS_AS(davenport(GroupSpec::parse("3,3,3"), SearchBudget{10}), budget_error);
}
