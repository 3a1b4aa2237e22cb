#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capture/rational.hpp"

using namespace capture;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
    Rational r(6, 8);
    CHECK(numerator(r) == 3);
    CHECK(denominator(r) == 4);

    Rational s = make_rational(2, -4);
    CHECK(numerator(s) == -1);
    CHECK(denominator(s) == 2);

    CHECK(Rational(0, 7) == Rational(0));
    CHECK(denominator(Rational(0, 7)) == 1);
    CHECK_THROWS_AS(make_rational(1, 0), InvalidArgumentError);
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 3) * 3 == Rational(1));
    CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
    Rational third = Rational(1) / 3;
    Rational sum = third + third + third;
    CHECK(sum == 1);
}

TEST_CASE("string serialization is p/q, or p when q = 1") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(-1, 2)) == "-1/2");
    CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("parsing round-trips and rejects junk") {
    for (const char* s : {"3/4", "-7/144", "5", "0", "-1"})
        CHECK(to_string(parse_rational(s)) == s);
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), InvalidArgumentError);
}

TEST_CASE("decimal rendering rounds half away from zero") {
    CHECK(to_decimal_string(Rational(11, 12), 8) == "0.91666667");
    CHECK(to_decimal_string(Rational(-11, 12), 8) == "-0.91666667");
    CHECK(to_decimal_string(Rational(1, 2), 0) == "1");
    CHECK(to_decimal_string(Rational(-1, 2), 3) == "-0.500");
    CHECK(to_decimal_string(Rational(2, 3), 2) == "0.67");
    CHECK(to_decimal_string(Rational(1), 2) == "1.00");
    CHECK(to_decimal_string(Rational(0), 4) == "0.0000");
    CHECK(to_decimal_string(Rational(1, 200), 2) == "0.01");  // tie 0.005 -> away
}

TEST_CASE("double conversion is the only inexact step") {
    CHECK(to_double(Rational(1, 2)) == 0.5);
    CHECK(to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // doubles convert to rationals exactly (dyadic)
    CHECK(Rational(0.5) == Rational(1, 2));
    CHECK(Rational(0.1) != Rational(1, 10));
}

TEST_CASE("integer helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == Int("2432902008176640000"));
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(40, 20) == Int("137846528820"));
    CHECK(binomial(3, 5) == 0);
    CHECK(rational_pow(Rational(-2, 3), 3) == Rational(-8, 27));
    CHECK(rational_pow(Rational(7, 2), 0) == 1);
}
