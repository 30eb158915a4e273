#include <doctest.h>

#include "zsf/automorphism.hpp"
#include "zsf/group.hpp"

using namespace zsf;

TEST_CASE("group spec parsing and arithmetic") {
    auto g = GroupSpec::parse("3,3,15");
    CHECK(g.invariant_factors() == std::vector<int>{3, 3, 15});
    CHECK(g.order() == 135);
    CHECK(g.format() == "3,3,15");

    auto e = GroupSpec::parse("3^3");
    CHECK(e.invariant_factors() == std::vector<int>{3, 3, 3});
    CHECK(e == GroupSpec::elementary(3, 3));

    auto c = GroupSpec::parse("5");
    CHECK(c.rank() == 1);
    CHECK(c.order() == 5);

    CHECK_THROWS_AS(GroupSpec::parse("3,5"), structural_error);  // 3 does not divide 5
    CHECK_THROWS_AS(GroupSpec::parse("1"), structural_error);
    CHECK_THROWS_AS(GroupSpec::parse(""), structural_error);
}

TEST_CASE("index/coords round trip and group laws") {
    auto g = GroupSpec::parse("2,4");
    for (int a = 0; a < g.order(); ++a) {
        CHECK(g.index_of(g.coords_of(a)) == a);
        CHECK(g.add(a, g.neg(a)) == 0);
        CHECK(g.add(a, 0) == a);
        for (int b = 0; b < g.order(); ++b) CHECK(g.add(a, b) == g.add(b, a));
    }
    CHECK(g.scale(g.index_of(std::vector<int>{1, 1}), 3) == g.index_of(std::vector<int>{1, 3}));
    CHECK(g.element_order(g.index_of(std::vector<int>{0, 1})) == 4);
    CHECK(g.element_order(0) == 1);
}

TEST_CASE("multiset parse/format round trip") {
    auto g = GroupSpec::parse("5,5");
    auto ms = GMultiSet::parse(g, "(1,0)^3 (0,1)^3");
    CHECK(ms.cardinality() == 6);
    CHECK(ms.count(g.index_of(std::vector<int>{1, 0})) == 3);
    CHECK(GMultiSet::parse(g, ms.format()) == ms);

    auto c = GroupSpec::parse("7");
    auto m2 = GMultiSet::parse(c, "1^2 3");
    CHECK(m2.cardinality() == 3);
    CHECK(m2.count(3) == 1);
}

TEST_CASE("grid format round trip for Z_3^3") {
    auto g = GroupSpec::elementary(3, 3);
    GMultiSet ms(g);
    ms.add(g.index_of(std::vector<int>{1, 0, 0}), 2);
    ms.add(g.index_of(std::vector<int>{0, 2, 1}), 1);
    auto text = to_grid(ms);
    CHECK(from_grid(text) == ms);
    // (0,0,0) is the lower-left cell of the first plane
    GMultiSet zero(g);
    zero.add(0);
    auto lines = to_grid(zero);
    while (!lines.empty() && lines.back() == '\n') lines.pop_back();
    CHECK(lines.substr(lines.rfind('\n') + 1).substr(0, 1) == "1");
}

TEST_CASE("automorphism group of Z_3^2") {
    auto g = GroupSpec::elementary(3, 2);
    CHECK(automorphism_count(3, 2) == 48);
    int seen = 0;
    for_each_automorphism(g, [&](const Automorphism& s) {
        ++seen;
        CHECK(s.apply_index(g, 0) == 0);
    });
    CHECK(seen == 48);
}

TEST_CASE("canonical form is an orbit invariant") {
    auto g = GroupSpec::elementary(3, 2);
    GMultiSet ms(g);
    ms.add(1, 2);
    ms.add(4, 1);
    ms.add(7, 1);
    auto canon = canonicalize(ms);
    for (const auto& s : automorphisms(g)) CHECK(canonicalize(apply(s, ms)) == canon);
    CHECK(canonical_counts(g, ms.counts()) == canon.counts());
}
