#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capture/coefficients.hpp"
#include "capture/power_series.hpp"
#include "oracle_helpers.hpp"

using namespace capture;

TEST_CASE("generate_B reproduces the reference coefficients") {
    CoefficientTable t = generate_B(6);
    std::vector<Rational> expected = {1,
                                      Rational(1, 2),
                                      Rational(1, 6),
                                      Rational(7, 144),
                                      Rational(19, 1440),
                                      Rational(37, 10800),
                                      Rational(29, 33600)};
    CHECK(t.B == expected);
    CHECK(t.max_order == 6);
}

TEST_CASE("generate_B seed and hand-evaluated recurrence step") {
    CHECK(generate_B(0).B == std::vector<Rational>{1});
    // B_3 = (1/12)(B_0 B_2 + B_1^2 + B_2 B_0)
    CoefficientTable t = generate_B(3);
    CHECK(t.B[3] == (t.B[0] * t.B[2] + t.B[1] * t.B[1] + t.B[2] * t.B[0]) / 12);
    CHECK(t.B[3] == Rational(7, 144));
}

TEST_CASE("integer_b gives the reference integer sequence") {
    CoefficientTable t = generate_B(6);
    std::vector<Int> expected = {1, 1, 2, 7, 38, 296, 3132};
    CHECK(t.b == expected);
    CHECK(integer_b(t) == expected);
    CHECK(t.b[0] == 1);                       // 0! 1! B_0
    CHECK(t.b[4] == 38);                      // 24 * 120 * 19/1440
    CHECK(Rational(24 * 120) * t.B[4] == 38);
}

TEST_CASE("sequence_d matches A002190") {
    std::vector<Int> expected = {1, 1, 4, 33, 456, 9460, 274800};
    CHECK(sequence_d(6) == expected);
    CHECK(sequence_d(0) == std::vector<Int>{1});
    CHECK(sequence_d(2)[2] == 4);
}

TEST_CASE("catalan agrees between recurrence and closed form") {
    std::vector<Int> first5 = {1, 1, 2, 5, 14};
    auto C = catalan(4);
    CHECK(C == first5);
    CHECK(catalan(0) == std::vector<Int>{1});
    CHECK_NOTHROW(catalan(20));  // the function cross-checks internally
    CHECK(catalan(20)[20] == Int("6564120420"));
}

TEST_CASE("catalan generating function (1 - sqrt(1-4t))/(2t) via binomial expansion") {
    auto gf = testing::catalan_generating_function(20);
    auto C = catalan(20);
    for (int n = 0; n <= 20; ++n) CHECK(gf[n] == Rational(C[n]));
}

TEST_CASE("integrality of n!(n+1)! B_n holds far out") {
    CoefficientTable t = generate_B(60);  // integer_b inside asserts integrality
    CHECK(t.b.size() == 61);
    for (const auto& b : t.b) CHECK(b > 0);
}

TEST_CASE("B_n is positive and strictly decreasing") {
    CoefficientTable t = generate_B(60);
    for (int n = 0; n < 60; ++n) {
        CHECK(t.B[n] > 0);
        CHECK(t.B[n] > t.B[n + 1]);
    }
}

TEST_CASE("Bessel generating identity ties d_n to -log J_0(2 sqrt(t))") {
    // J_0(2 sqrt(t)) = sum_k (-t)^k / (k!)^2; the n-th coefficient of the
    // -log series carries d_{n-1}/(n!)^2 (the sequence enters one power up).
    const int N = 15;
    PowerSeries j0(N);
    for (int k = 0; k <= N; ++k) {
        Int kf = factorial(static_cast<unsigned>(k));
        j0[k] = Rational(k % 2 == 0 ? 1 : -1) / Rational(kf * kf);
    }
    PowerSeries s = j0;
    s[0] -= 1;
    PowerSeries neg_log = series_scale(series_log1p(s), -1);

    CHECK(neg_log[1] == 1);
    CHECK(neg_log[2] == Rational(1, 4));
    CHECK(neg_log[3] == Rational(1, 9));

    auto d = sequence_d(N - 1);
    for (int n = 1; n <= N; ++n) {
        Int nf = factorial(static_cast<unsigned>(n));
        CHECK(neg_log[n] == Rational(d[n - 1]) / Rational(nf * nf));
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(generate_B(-1), InvalidArgumentError);
    CHECK_THROWS_AS(sequence_d(-2), InvalidArgumentError);
    CHECK_THROWS_AS(catalan(-1), InvalidArgumentError);
}
