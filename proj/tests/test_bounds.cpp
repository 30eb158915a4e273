#include <doctest.h>

#include "zsf/bounds.hpp"

using namespace zsf;

namespace {
long long ipow(long long b, long long e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}
}  // namespace

TEST_CASE("constants ledger satisfies the generic bounds on a grid") {
    for (long long k = 2; k <= 5; ++k)
        for (long long ell = 3; ell <= 5; ++ell)
            for (long long delta = 2; delta <= 10; ++delta) {
                CAPTURE(k);
                CAPTURE(ell);
                CAPTURE(delta);
                long long c = ipow(k, ell + 1);
                auto led = bounds::constants_ledger(k, ell, delta, c);
                CHECK(led.c_defect <= 3 * ipow(k, ell));
                CHECK(led.c_less <= ipow(k, ell + 1) - delta);
                CHECK(led.c_more <= 4 * ipow(k, ell + 1));
                CHECK(led.c_card <= 5 * ipow(k, ell + 1));
                CHECK(led.c_ws <= 3 * ipow(k, ell));
                CHECK(led.c_var <= 7 * ipow(k, ell + 1) + delta);
                CHECK(led.c_eq <= 12 * ipow(k, ell + 1) + delta);
                CHECK(led.n_min <= 27 * ipow(k, ell + 1) + 2 * delta);
                CHECK(led.coefficient_bound == k);
                CHECK(led.eq_count_bound == bounds::Int(1) << led.c_var);
            }
}

TEST_CASE("frozen bound values") {
    // ceil(6*3*(7*4^4 + 6)*ln(4*6)) and ceil(6*3*(7*2^4 + 2)*ln(2*2))
    CHECK(bounds::bound_infinite(4, 3, 6) == 102855);
    CHECK(bounds::bound_infinite(2, 3, 2) == 2845);
    CHECK_THROWS_AS(bounds::bound_infinite(3, 2, 3), structural_error);
    auto fin = bounds::bound_finite_symbolic(4, 3, 6);
    CHECK(fin.exponent_arg == 262);  // 4^4 + 6
    CHECK(fin.rendering.find("262") != std::string::npos);
}

TEST_CASE("ledger formats as an aligned table") {
    auto led = bounds::constants_ledger(3, 2, 3, 27);
    auto text = led.format();
    CHECK(text.find("c_defect") != std::string::npos);
    CHECK(text.find("n_min") != std::string::npos);
}
