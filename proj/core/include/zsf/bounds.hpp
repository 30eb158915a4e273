#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "zsf/errors.hpp"

namespace zsf::bounds {

using Int = boost::multiprecision::cpp_int;

// The chain of constants controlling the decision procedure for
// "D(Z_k^ell + Z_n) <= delta + k n for all n coprime to k", all expressed in
// terms of k, ell, delta and the short-zero-sum constant c = c(k, ell).
struct ConstantsLedger {
    long long k = 0, ell = 0, delta = 0;
    long long c = 0;
    long long c_defect = 0;
    long long c_less = 0;
    long long c_more = 0;
    long long c_card = 0;
    long long c_ws = 0;
    long long c_nn = 0;
    long long c_var = 0;
    long long c_eq = 0;
    long long n_min = 0;  // validity threshold: max of all step requirements

    long long coefficient_bound = 0;  // all equation coefficients equal k
    long long rhs_bound = 0;          // k (c_defect + c_eq)
    long long var_count = 0;          // c_var
    Int eq_count_bound;               // 2^c_var

    std::string format() const;  // aligned table
};

// Evaluates the exact formulas. c is typically c_const(k, ell) or the generic
// bound k^{ell+1}. assume_defect_bound replaces the computed c_defect by the
// worst-case value 3 k^ell (which forces c_nn = 0); both readings are exposed.
ConstantsLedger constants_ledger(long long k, long long ell, long long delta, long long c,
                                 bool assume_defect_bound = false);

// If counterexample moduli n exist at all and infinitely many do, the least
// one is at most ceil(6 ell (7 k^{ell+1} + delta) ln(k delta)).
long long bound_infinite(long long k, long long ell, long long delta);

// The doubly-exponential bound 2^(2^(c*m)) with m = k^{ell+1} + delta and c an
// unspecified absolute constant, kept symbolic.
struct FiniteBound {
    long long exponent_arg = 0;  // m = k^{ell+1} + delta
    std::string rendering;       // "2^(2^(c*m))" with m substituted, c symbolic
};

FiniteBound bound_finite_symbolic(long long k, long long ell, long long delta);

}  // namespace zsf::bounds
