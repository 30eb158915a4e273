#include <doctest.h>

#include <random>

#include "modular_oracle.hpp"
#include "zsf/intlinalg.hpp"

using namespace zsf;
using lin::Int;
using lin::IntMat;

namespace {

bool is_unimodular(const IntMat& m) {
    if (m.rows != m.cols) return false;
    // expand by minors is fine at these sizes
    if (m.rows == 1) return m.at(0, 0) == 1 || m.at(0, 0) == -1;
    Int det = 0;
    for (int c = 0; c < m.cols; ++c) {
        IntMat minor(m.rows - 1, m.cols - 1);
        for (int r = 1; r < m.rows; ++r)
            for (int cc = 0, k = 0; cc < m.cols; ++cc)
                if (cc != c) minor.at(r - 1, k++) = m.at(r, cc);
        Int sub = 0;
        if (minor.rows == 1)
            sub = minor.at(0, 0);
        else if (minor.rows == 2)
            sub = minor.at(0, 0) * minor.at(1, 1) - minor.at(0, 1) * minor.at(1, 0);
        else {  // 3x3
            sub = minor.at(0, 0) * (minor.at(1, 1) * minor.at(2, 2) - minor.at(1, 2) * minor.at(2, 1)) -
                  minor.at(0, 1) * (minor.at(1, 0) * minor.at(2, 2) - minor.at(1, 2) * minor.at(2, 0)) +
                  minor.at(0, 2) * (minor.at(1, 0) * minor.at(2, 1) - minor.at(1, 1) * minor.at(2, 0));
        }
        det += (c % 2 == 0 ? 1 : -1) * m.at(0, c) * sub;
    }
    return det == 1 || det == -1;
}

}  // namespace

TEST_CASE("matrix text round trip") {
    auto a = IntMat::parse("2 4; 6 8");
    CHECK(a.rows == 2);
    CHECK(a.cols == 2);
    CHECK(a.at(1, 0) == 6);
    CHECK(IntMat::parse(a.format()) == a);
    CHECK_THROWS_AS(IntMat::parse("1 2; 3"), structural_error);
}

TEST_CASE("smith normal form on a known matrix") {
    auto a = IntMat::parse("2 4; 6 8");
    auto s = lin::smith_normal_form(a);
    CHECK(s.diag(0) == 2);
    CHECK(s.diag(1) == 4);
    CHECK(lin::mul(lin::mul(s.p, a), s.qinv) == s.d);
    CHECK(lin::mul(s.q, s.qinv) == IntMat::identity(2));
}

TEST_CASE("solvability pattern examples") {
    // 2x = 1: solvable exactly for odd n
    auto pat = lin::solvability_pattern(IntMat::parse("2"), IntMat::parse("1"));
    CHECK_FALSE(pat.finite);
    CHECK(pat.contains(1));
    CHECK(pat.contains(5));
    CHECK_FALSE(pat.contains(4));
    CHECK_FALSE(lin::solvable_mod(IntMat::parse("2"), IntMat::parse("1"), 4));

    // 0x = 3: solvable exactly for n | 3
    auto pat2 = lin::solvability_pattern(IntMat::parse("0"), IntMat::parse("3"));
    CHECK(pat2.finite);
    CHECK(pat2.moduli == std::vector<Int>{1, 3});
}

TEST_CASE("unsolvability witness and smoothness") {
    // x = 1, 3x = 0 => 3 = 0
    auto w = lin::unsolvability_witness(IntMat::parse("1; 3"), IntMat::parse("1; 0"));
    REQUIRE(w.has_value());
    CHECK(*w == 3);
    CHECK(lin::is_2_3_smooth(*w));
    CHECK(lin::is_2_3_smooth(Int(12)));
    CHECK_FALSE(lin::is_2_3_smooth(Int(10)));
    CHECK_FALSE(lin::is_2_3_smooth(Int(0)));
}

TEST_CASE("random systems: pattern equals independent oracle, SNF reconstructs") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> dim_r(1, 4), dim_c(1, 5), entry(-9, 9);
    for (int iter = 0; iter < 1000; ++iter) {
        int rows = dim_r(rng), cols = dim_c(rng);
        IntMat a(rows, cols), b(rows, 1);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) a.at(r, c) = entry(rng);
            b.at(r, 0) = entry(rng);
        }

        auto s = lin::smith_normal_form(a);
        REQUIRE(lin::mul(lin::mul(s.p, a), s.qinv) == s.d);
        REQUIRE(lin::mul(s.q, s.qinv) == IntMat::identity(cols));
        REQUIRE(is_unimodular(s.p));
        for (int i = 0; i + 1 < std::min(rows, cols); ++i)
            if (s.diag(i + 1) != 0) REQUIRE(s.diag(i + 1) % (s.diag(i) == 0 ? s.diag(i + 1) : s.diag(i)) == 0);

        auto pat = lin::solvability_pattern(a, b);
        for (int n = 1; n <= 60; ++n) {
            bool expected = oracle::solvable_mod(a, b, n);
            REQUIRE(pat.contains(n) == expected);
            REQUIRE(lin::solvable_mod(a, b, n) == expected);
            // pin the oracle itself to exhaustive search where that is feasible
            if (n <= 8) REQUIRE(expected == oracle::solvable_mod_enumerate(a, b, n));
        }

        // the witness, when present, is sound: solvable n divide it
        if (auto w = lin::unsolvability_witness(a, b)) {
            for (int n = 2; n <= 60; ++n)
                if (oracle::solvable_mod(a, b, n)) REQUIRE(*w % n == 0);
        }
    }
}
