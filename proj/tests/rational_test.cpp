#include "doctest.h"
#include "qkdplan/rational.hpp"

using qkdplan::Rational;

TEST_CASE("decimal parsing is exact") {
  CHECK(Rational::from_decimal_string("1500") == Rational(1500));
  CHECK(Rational::from_decimal_string("0.1") == Rational(1, 10));
  CHECK(Rational::from_decimal_string("12.75") == Rational(51, 4));
  CHECK(Rational::from_decimal_string("-2.5") == Rational(-5, 2));
  CHECK_THROWS(Rational::from_decimal_string(""));
  CHECK_THROWS(Rational::from_decimal_string("1.2.3"));
  CHECK_THROWS(Rational::from_decimal_string("abc"));
}

TEST_CASE("arithmetic and ordering") {
  Rational third{1, 3};
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
  CHECK(Rational(7, 2) * Rational(2, 7) == Rational(1));
  CHECK(Rational(5) / Rational(2) == Rational(5, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("rounding") {
  CHECK(Rational(1, 2).round_half_up() == 1);
  CHECK(Rational(3, 2).round_half_up() == 2);
  CHECK(Rational(12, 5).round_half_up() == 2);
  CHECK(Rational(13, 5).round_half_up() == 3);
  CHECK(Rational(0).round_half_up() == 0);
  CHECK(Rational(-1, 2).round_half_up() == 0);
}

TEST_CASE("fixed-point formatting") {
  CHECK(Rational(1, 3).to_fixed_string(6) == "0.333333");
  CHECK(Rational(2, 3).to_fixed_string(6) == "0.666667");
  CHECK(Rational(14320).to_fixed_string(6) == "14320.000000");
  CHECK(Rational(1, 8).to_fixed_string(3) == "0.125");
  CHECK(Rational(1, 2000).to_fixed_string(3) == "0.001");
  CHECK(Rational(1005, 10).to_fixed_string(1) == "100.5");
  CHECK(Rational(5).to_fixed_string(0) == "5");
}

TEST_CASE("overflow is detected") {
  Rational big{INT64_MAX / 2, 1};
  CHECK_THROWS_AS(big * Rational(8), std::overflow_error);
}
