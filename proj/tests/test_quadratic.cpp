#include "cfs/quadratic.hpp"

#include "cfs/continuant.hpp"

#include <doctest.h>

using namespace cfs;

TEST_CASE("normal form") {
  // sqrt(8) = 2 sqrt(2)
  QuadraticValue v = QuadraticValue::sqrt_of(8);
  CHECK(v.b() == 2);
  CHECK(v.d() == 2);
  // sqrt(9) collapses to the rational 3
  QuadraticValue w = QuadraticValue::sqrt_of(9);
  CHECK(w.is_rational());
  CHECK(w.rational() == Rational(3));
  // gcd reduction and positive denominator
  QuadraticValue u(BigInt(2), BigInt(4), BigInt(-6), BigInt(5));
  CHECK(u.c() == 3);
  CHECK(u.a() == -1);
  CHECK(u.b() == -2);
}

TEST_CASE("arithmetic and exact comparison") {
  QuadraticValue s5 = QuadraticValue::sqrt_of(5);
  QuadraticValue phi_inv = (s5 - QuadraticValue::from_rational(Rational(1))) /
                           QuadraticValue::from_rational(Rational(2));
  // x = (sqrt 5 - 1)/2 solves x^2 + x - 1 = 0
  QuadraticValue zero = phi_inv * phi_inv + phi_inv -
                        QuadraticValue::from_rational(Rational(1));
  CHECK(zero.sign() == 0);
  CHECK(phi_inv.compare(Rational(3, 5)) > 0);
  CHECK(phi_inv.compare(Rational(2, 3)) < 0);
  CHECK_THROWS_AS(QuadraticValue::sqrt_of(2) + QuadraticValue::sqrt_of(3),
                  std::domain_error);
  CHECK_THROWS_AS(s5 / QuadraticValue::from_rational(Rational(0)),
                  std::domain_error);
  // mobius pole: (v + 1)/(v - v) style degenerate denominators
  CHECK_THROWS_AS(phi_inv.mobius(1, 1, 0, 0), std::domain_error);
}

TEST_CASE("enclosure width and containment") {
  QuadraticValue s2 = QuadraticValue::sqrt_of(2);
  Rational tol(1, BigInt(1000000000000));
  QInterval e = s2.enclosure(tol);
  CHECK(e.width() <= tol);
  // 2 sits below, squared comparison puts sqrt(2) inside
  CHECK(e.lo * e.lo <= 2);
  CHECK(e.hi * e.hi >= 2);
  CHECK_THROWS_AS(s2.enclosure(Rational(0)), std::invalid_argument);
}

TEST_CASE("purely periodic continued fractions") {
  QuadraticValue golden = cf_periodic_value(Word{1});
  // (sqrt 5 - 1)/2
  CHECK(golden.a() == -1);
  CHECK(golden.b() == 1);
  CHECK(golden.c() == 2);
  CHECK(golden.d() == 5);

  QuadraticValue r2 = cf_periodic_value(Word{2});
  // sqrt 2 - 1
  CHECK(r2.a() == -1);
  CHECK(r2.b() == 1);
  CHECK(r2.c() == 1);
  CHECK(r2.d() == 2);
}

TEST_CASE("eventually periodic value with preperiod") {
  // [0; 2, 1, 1, 1, ...] = 1/(2 + (sqrt5-1)/2) = (3 - sqrt 5)/2
  Rational tol(1, BigInt(1) << 40);
  EnclosedQuadratic v = cf_value({Word{2}, Word{1}}, tol);
  QuadraticValue expect = (QuadraticValue::from_rational(Rational(3)) -
                           QuadraticValue::sqrt_of(5)) /
                          QuadraticValue::from_rational(Rational(2));
  CHECK(v.value == expect);
  CHECK(v.enclosure.width() <= tol);

  // oracle: 60-term finite truncation [0;2,1,1,...,1] brackets the value
  Word trunc_syms;
  trunc_syms.push_back(2);
  for (int i = 0; i < 60; ++i) trunc_syms.push_back(1);
  Continuants c;
  for (int s : trunc_syms) c.extend(s);
  Rational approx(c.p, c.q);
  approx.canonicalize();
  CHECK(v.value.compare(approx - Rational(1, BigInt(1) << 60)) > 0);
  CHECK(v.value.compare(approx + Rational(1, BigInt(1) << 60)) < 0);

  CHECK_THROWS_AS(cf_value({{}, Word{1}}, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(cf_value({{}, Word{}}, Rational(1)), std::invalid_argument);
}

TEST_CASE("f values of periodic sequences") {
  // all-ones: f = 1 + 2*(sqrt5-1)/2 = sqrt 5
  QuadraticValue f1 = f_shift_value(Word{1}, 0);
  CHECK(f1 == QuadraticValue::sqrt_of(5));
  // all-twos: f = 2 + 2(sqrt2-1) = sqrt 8
  QuadraticValue f2 = f_shift_value(Word{2}, 0);
  CHECK(f2 == QuadraticValue::sqrt_of(8));
  // (2,2,1,1): the shift at the first 2 realizes sqrt(221)/5
  QuadraticValue f2211 = f_shift_value(Word{2, 2, 1, 1}, 0);
  QuadraticValue expect = QuadraticValue::sqrt_of(221) /
                          QuadraticValue::from_rational(Rational(5));
  CHECK(f2211 == expect);

  // cyclic max over all shifts of (2,2,1,1) is attained there
  for (size_t i = 1; i < 4; ++i)
    CHECK(f_shift_value(Word{2, 2, 1, 1}, i).compare(expect) <= 0);
}
