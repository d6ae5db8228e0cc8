#include "cfs/rational.hpp"

#include <doctest.h>

#include <cmath>

using namespace cfs;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("7/3") == Rational(7, 3));
  CHECK(parse_rational("3.334384") == parse_rational("208399/62500"));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("rational to_string round trip") {
  Rational q(22, 7);
  CHECK(to_string(q) == "22/7");
  CHECK(parse_rational(to_string(q)) == q);
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("directed double rounding") {
  Rational third(1, 3);
  double dn = round_down(third), up = round_up(third);
  CHECK(Rational(dn) <= third);
  CHECK(Rational(up) >= third);
  CHECK(up - dn <= 1e-15);
  // exact doubles stay put
  CHECK(round_down(Rational(1, 4)) == 0.25);
  CHECK(round_up(Rational(1, 4)) == 0.25);
}

TEST_CASE("decimal_string truncates toward zero") {
  CHECK(decimal_string(Rational(1, 3), 5) == "0.33333");
  CHECK(decimal_string(Rational(-1, 3), 5) == "-0.33333");
  CHECK(decimal_string(Rational(7, 2), 3) == "3.500");
  CHECK(decimal_string(Rational(5), 0) == "5");
}

TEST_CASE("exp_ceil matches known values") {
  CHECK(exp_ceil(0) == 1);
  CHECK(exp_ceil(1) == 3);       // e = 2.718...
  CHECK(exp_ceil(2) == 8);       // e^2 = 7.389...
  CHECK(exp_ceil(3) == 21);      // 20.08...
  CHECK(exp_ceil(10) == 22027);  // 22026.46...
  // spot check against double at moderate size
  double e20 = std::exp(20.0);
  BigInt c20 = exp_ceil(20);
  CHECK(c20.get_d() == doctest::Approx(e20).epsilon(1e-8));
}

TEST_CASE("QInterval algebra") {
  QInterval a{Rational(1, 4), Rational(1, 2)};
  QInterval b{Rational(1, 3), Rational(2, 3)};
  QInterval s = a + b;
  CHECK(s.lo == Rational(7, 12));
  CHECK(s.hi == Rational(7, 6));
  CHECK(a.intersects(b));
  CHECK(!a.contains(b));
  QInterval h = QInterval::hull(a, b);
  CHECK(h.lo == Rational(1, 4));
  CHECK(h.hi == Rational(2, 3));
}
