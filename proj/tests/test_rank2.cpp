#include <doctest.h>

#include "zsf/rank2.hpp"
#include "zsf/zerosum.hpp"

using namespace zsf;
using rank2::CompletionClass;

TEST_CASE("cyclic structure checks on small moduli") {
    for (int n = 2; n <= 9; ++n) {
        CAPTURE(n);
        CHECK(rank2::ben_check(n));
        CHECK(rank2::corcd_check(n));
    }
}

TEST_CASE("extremal multiplicity property for small n") {
    CHECK(rank2::property_b(2));
    CHECK(rank2::property_b(3));
    CHECK(rank2::property_b(4));
    CHECK(rank2::property_b(5));
}

TEST_CASE("completion report: two elements of multiplicity n-2") {
    int n = 5;
    GroupSpec g(std::vector<int>{n, n});
    auto b = GMultiSet::parse(g, "(1,0)^3 (0,1)^3");  // |B| = 2n-4
    auto rep = rank2::completion_report(b);
    CHECK(rep.classification == CompletionClass::C2);
    CHECK(rep.exception);  // two basis elements, both multiplicity n-2
    // the full C2 family: (1,0) pairs with every (x,1), and (x,1)+(1-x,1)
    CHECK(rep.pairs.size() > 0);
    for (auto& [c1, c2] : rep.pairs) {
        GMultiSet ext = b;
        ext.add(c1);
        ext.add(c2);
        CHECK(is_zero_sum_free(ext));
    }
}

TEST_CASE("completion report: the four-pair C3 configuration") {
    int n = 5;
    GroupSpec g(std::vector<int>{n, n});
    auto b = GMultiSet::parse(g, "(1,0)^2 (0,1)^2 (1,1)^2");  // m1 = m2 = n-3, m3 = 2
    auto rep = rank2::completion_report(b);
    CHECK(rep.classification == CompletionClass::C3);
    CHECK_FALSE(rep.exception);
    // exactly the pairs {(1,0)^2}, {(0,1)^2}, {(1,0),(-1,1)}, {(0,1),(1,-1)}
    CHECK(rep.pairs.size() == 4);
    auto hom = rank2::find_hom_zero_one(rep);
    REQUIRE(hom.has_value());
}

TEST_CASE("completion singles recheck as zero-sum free extensions") {
    int n = 5;
    GroupSpec g(std::vector<int>{n, n});
    auto b = GMultiSet::parse(g, "(1,0)^4 (0,1)^3");  // |B| = 2n-3
    auto rep = rank2::completion_report(b);
    for (int c : rep.singles) {
        GMultiSet ext = b;
        ext.add(c);
        CHECK(is_zero_sum_free(ext));
    }
    auto hom = rank2::find_hom_all_ones(rep);
    REQUIRE(hom.has_value());
    for (int c : rep.singles) {
        auto xy = g.coords_of(c);
        CHECK((hom->first * xy[0] + hom->second * xy[1]) % n == 1);
    }
}

TEST_CASE("completion report rejects wrong cardinalities") {
    GroupSpec g(std::vector<int>{5, 5});
    CHECK_THROWS_AS(rank2::completion_report(GMultiSet::parse(g, "(1,0)^2")), structural_error);
}
