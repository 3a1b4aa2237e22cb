#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capture/separatrix.hpp"

using namespace capture;

namespace {

SeparatrixExpansion sep(int N, Rational eps = 1) {
    return make_separatrix(generate_B(N), std::move(eps), N);
}

}  // namespace

TEST_CASE("eval_x partial sums") {
    SeparatrixExpansion e1 = sep(1);
    CHECK(eval_x(e1, Rational(0)) == 0);
    CHECK(eval_x(e1, Rational(1, 2)) == Rational(3, 8));  // (1/2)(1 - (1/2)(1/2))
    SeparatrixExpansion e0 = sep(0);
    CHECK(eval_x(e0, Rational(2, 3)) == Rational(2, 3));  // pure e^{-t} at leading order
}

TEST_CASE("eval_u partial sums") {
    SeparatrixExpansion e0 = sep(0);
    // at leading order u = -x: the separatrix approaches the origin along x = -x'
    for (int k = 1; k <= 5; ++k) {
        Rational z(k, 7);
        CHECK(eval_u(e0, z) == -z);
        CHECK(eval_u(e0, z) == -eval_x(e0, z));
    }
    CHECK(eval_u(e0, Rational(0)) == 0);
    SeparatrixExpansion e1 = sep(1);
    CHECK(eval_u(e1, Rational(1, 2)) == Rational(-1, 4));  // -(1/2)(1 - 2*(1/2)(1/2))
}

TEST_CASE("float wrappers convert only at the end") {
    SeparatrixExpansion e = sep(12);
    CHECK(eval_x_f64(e, 0.5) == to_double(eval_x(e, Rational(0.5))));
    CHECK(eval_u_f64(e, 0.25) == to_double(eval_u(e, Rational(0.25))));
}

TEST_CASE("square via the recurrence identity") {
    SeparatrixExpansion e2 = sep(2);
    PowerSeries sq = square_via_recurrence(e2);
    // x^2 = z^2 (1*2*B_1 - 2*3*B_2 z + ...) = z^2 - z^3 + ...
    CHECK(sq == PowerSeries({0, 0, 1, -1}));
    CHECK(sq[2] == 1);  // (1)(2) B_1

    CHECK_THROWS_AS(square_via_recurrence(sep(0)), InvalidArgumentError);
}

TEST_CASE("identity square equals the Cauchy self-product at every order") {
    for (int N : {1, 2, 3, 5, 8, 13, 21, 40}) {
        SeparatrixExpansion e = sep(N);
        PowerSeries x = x_series(e);
        CHECK(square_via_recurrence(e) == series_mul(x, x));
    }
    // also away from eps = 1: the identity is epsilon-generic
    SeparatrixExpansion e = sep(9, Rational(2, 3));
    PowerSeries x = x_series(e);
    CHECK(square_via_recurrence(e) == series_mul(x, x));
}

TEST_CASE("ode residual vanishes through z^{N+1}") {
    SeparatrixExpansion e0 = sep(0);
    CHECK(ode_residual(e0) == PowerSeries({0, 0, 1}));  // eps z^2 left over

    for (int N : {1, 2, 5, 17, 40}) {
        PowerSeries r = ode_residual(sep(N));  // throws on any nonzero low coefficient
        CHECK(r.truncation_order() == 2 * N + 2);
        for (int m = 1; m <= N + 1; ++m) CHECK(r[m] == 0);
        CHECK(r[N + 2] != 0);
    }
    CHECK_NOTHROW(ode_residual(sep(11, Rational(3, 7))));
}

TEST_CASE("residual leading term matches the truncated convolution") {
    // Beyond z^{N+1} the linear part is gone, so the residual is the eps x^2
    // tail; cross-check its first surviving coefficient against series_mul.
    for (int N : {3, 6, 10}) {
        SeparatrixExpansion e = sep(N);
        PowerSeries r = ode_residual(e);
        PowerSeries x = x_series(e);
        PowerSeries wide(2 * N + 2);
        for (int k = 0; k <= x.truncation_order(); ++k) wide[k] = x[k];
        PowerSeries x2 = series_mul(wide, wide);
        CHECK(r[N + 2] == e.epsilon * x2[N + 2]);
    }
}

TEST_CASE("on the separatrix x > 0 and u < 0 up to the critical point") {
    for (int N : {5, 10, 20, 40}) {
        SeparatrixExpansion e = sep(N);
        for (int k = 1; k <= 30; ++k) {
            Rational z(k * 917452, 30000000);  // grid over (0, z_c]
            CHECK(eval_x(e, z) > 0);
            CHECK(eval_u(e, z) < 0);
        }
    }
}

TEST_CASE("construction validates the order against the table") {
    CHECK_THROWS_AS(make_separatrix(generate_B(3), 1, 5), InvalidArgumentError);
    CHECK_THROWS_AS(make_separatrix(generate_B(3), 1, -1), InvalidArgumentError);
}
