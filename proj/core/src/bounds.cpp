#include "zsf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zsf::bounds {

namespace {

long long ceil_div(long long a, long long b) {  // b > 0
    long long q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

long long ipow(long long base, long long exp) {
    long long v = 1;
    for (long long i = 0; i < exp; ++i) {
        if (v > (1LL << 50) / base) throw structural_error("power out of range");
        v *= base;
    }
    return v;
}

}  // namespace

ConstantsLedger constants_ledger(long long k, long long ell, long long delta, long long c,
                                 bool assume_defect_bound) {
    if (k < 2) throw structural_error("k must be >= 2");
    if (ell < 1) throw structural_error("ell must be >= 1");
    if (delta < 0) throw structural_error("delta must be >= 0");
    if (c < 0) throw structural_error("c must be >= 0");

    ConstantsLedger g;
    g.k = k;
    g.ell = ell;
    g.delta = delta;
    g.c = c;
    long long kl = ipow(k, ell);

    g.c_defect = assume_defect_bound ? 3 * kl : std::max<long long>(0, 1 + ceil_div(2 * c - delta, k));
    g.c_less = std::max<long long>(0, c - delta - 1);
    g.c_more = delta + k * g.c_defect + g.c_less;
    g.c_card = g.c_more + g.c_less;
    g.c_ws = std::max<long long>(0, g.c_defect - 1);
    g.c_nn = std::max<long long>(0, ceil_div((k - 1) * kl - delta - k * g.c_defect, k));
    g.c_var = delta + k * (g.c_defect + g.c_nn + g.c_ws + kl - 1);
    g.c_eq = g.c_card + g.c_var;
    g.n_min = std::max({3 * g.c_defect,
                        4 * g.c_defect,
                        g.c_defect + g.c_more + 2 * g.c_ws + 1 + k * (g.c_ws + 1),
                        2 * (g.c_defect + g.c_eq),
                        ceil_div((k - 1) * kl - delta + g.c_var, k)});

    g.coefficient_bound = k;
    g.rhs_bound = k * (g.c_defect + g.c_eq);
    g.var_count = g.c_var;
    g.eq_count_bound = Int(1) << g.c_var;
    return g;
}

std::string ConstantsLedger::format() const {
    std::ostringstream out;
    auto line = [&](const char* name, auto v) {
        std::string n(name);
        out << n << std::string(n.size() < 18 ? 18 - n.size() : 1, ' ') << v << '\n';
    };
    line("k", k);
    line("ell", ell);
    line("delta", delta);
    line("c", c);
    line("c_defect", c_defect);
    line("c_less", c_less);
    line("c_more", c_more);
    line("c_card", c_card);
    line("c_ws", c_ws);
    line("c_nn", c_nn);
    line("c_var", c_var);
    line("c_eq", c_eq);
    line("n_min", n_min);
    line("coefficient_bound", coefficient_bound);
    line("rhs_bound", rhs_bound);
    line("var_count", var_count);
    line("eq_count_bound", eq_count_bound);
    return out.str();
}

long long bound_infinite(long long k, long long ell, long long delta) {
    if (k < 2 || ell < 3 || delta < 2)
        throw structural_error("bound_infinite needs k >= 2, ell >= 3, delta >= 2");
    long long kl1 = ipow(k, ell + 1);
    double v = 6.0 * static_cast<double>(ell) * (7.0 * static_cast<double>(kl1) + static_cast<double>(delta)) *
               std::log(static_cast<double>(k) * static_cast<double>(delta));
    return static_cast<long long>(std::ceil(v));
}

FiniteBound bound_finite_symbolic(long long k, long long ell, long long delta) {
    if (k < 2 || ell < 3 || delta < 2)
        throw structural_error("bound_finite_symbolic needs k >= 2, ell >= 3, delta >= 2");
    FiniteBound b;
    b.exponent_arg = ipow(k, ell + 1) + delta;
    std::ostringstream out;
    out << "2^(2^(c*" << b.exponent_arg << "))";
    b.rendering = out.str();
    return b;
}

}  // namespace zsf::bounds
