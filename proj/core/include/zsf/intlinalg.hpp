#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsf/errors.hpp"

namespace zsf::lin {

using Int = boost::multiprecision::cpp_int;

// Dense exact integer matrix, row-major.
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {
        if (r < 0 || c < 0) throw structural_error("negative matrix dimension");
    }

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static IntMat identity(int n);
    // Rows separated by ';' or newlines, entries by spaces: "2 4; 6 8".
    static IntMat parse(std::string_view text);
    std::string format() const;

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

IntMat mul(const IntMat& x, const IntMat& y);

// D = P * A * Qinv with P, Q unimodular, Q * Qinv = I, D diagonal with
// d_00 | d_11 | ... and d_ii >= 0.
struct SnfDecomposition {
    IntMat p, q, qinv, d;
    int diag_rank() const;            // number of nonzero diagonal entries
    Int diag(int i) const { return d.at(i, i); }
};

SnfDecomposition smith_normal_form(const IntMat& a);

// Exact description of { n >= 1 : Ax = b solvable over Z_n }: either a finite
// list of moduli, or all n with gcd(n, d) in a divisor set T of d.
struct SolvabilityPattern {
    bool finite = false;
    std::vector<Int> moduli;    // finite case, sorted, duplicate-free
    Int d = 1;                  // cofinite case
    std::vector<Int> divisors;  // T: sorted divisors of d

    bool contains(const Int& n) const;
};

SolvabilityPattern solvability_pattern(const IntMat& a, const IntMat& b);

// Direct oracle: true iff Ax = b (mod n) has a solution, n >= 1.
bool solvable_mod(const IntMat& a, const IntMat& b, const Int& n);

// Fraction-free integer elimination over the rows of [A | b]. Every derived
// row is an integer combination of the originals (rows are scaled, never
// divided), so a derived row 0 = a forces n | a for any n where the system is
// solvable. Returns the gcd of all such |a| if any arise; absence proves
// nothing (sound, not complete).
std::optional<Int> unsolvability_witness(const IntMat& a, const IntMat& b);

// true iff v = 2^a * 3^b for some a, b >= 0 (in particular v != 0).
bool is_2_3_smooth(Int v);

// true iff some n in [z, 2z] is solvable per the pattern.
bool interval_solvable(const SolvabilityPattern& pattern, long long z);

}  // namespace zsf::lin
