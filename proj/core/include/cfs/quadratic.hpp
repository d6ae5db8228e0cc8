#pragma once

#include "cfs/rational.hpp"
#include "cfs/word.hpp"

namespace cfs {

// Exact element (a + b*sqrt(d)) / c of a real quadratic field.
// Normal form: c > 0, d >= 1 squarefree (up to a documented trial-division
// bound), b == 0 implies d == 1, gcd(a, b, c) == 1. Equality is syntactic.
class QuadraticValue {
 public:
  QuadraticValue() : a_(0), b_(0), c_(1), d_(1) {}
  QuadraticValue(BigInt a, BigInt b, BigInt c, BigInt d);

  static QuadraticValue from_rational(const Rational& r);
  static QuadraticValue sqrt_of(const BigInt& n);  // n >= 0

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  Rational rational() const { return {a_, c_}; }  // valid when is_rational()

  // Same-field (or rational) arithmetic; mixing distinct irrational fields
  // throws std::domain_error.
  friend QuadraticValue operator+(const QuadraticValue&, const QuadraticValue&);
  friend QuadraticValue operator-(const QuadraticValue&, const QuadraticValue&);
  friend QuadraticValue operator*(const QuadraticValue&, const QuadraticValue&);
  friend QuadraticValue operator/(const QuadraticValue&, const QuadraticValue&);
  QuadraticValue operator-() const;
  friend bool operator==(const QuadraticValue&, const QuadraticValue&) = default;

  // (A*v + B) / (C*v + D)
  QuadraticValue mobius(const BigInt& A, const BigInt& B, const BigInt& C,
                        const BigInt& D) const;

  int sign() const;                        // exact
  int compare(const QuadraticValue&) const;  // sign of *this - other
  int compare(const Rational&) const;

  QInterval enclosure(const Rational& tol) const;  // width <= tol, certified
  double to_double() const;
  std::string str() const;  // "(a+b*sqrt(d))/c"

 private:
  BigInt a_, b_, c_, d_;
  void normalize();
};

struct EnclosedQuadratic {
  QuadraticValue value;
  QInterval enclosure;
};

// Value of the purely periodic continued fraction [0; w, w, w, ...].
QuadraticValue cf_periodic_value(const Word& period);

// Value of [0; preperiod, period, period, ...]; tol > 0 sizes the enclosure.
EnclosedQuadratic cf_value(const PeriodicSeq& s, const Rational& tol);

// f(sigma^i theta) = theta_i + [0; theta_{i+1}, ...] + [0; theta_{i-1}, ...]
// for the bi-infinite periodic sequence with the given period word.
QuadraticValue f_shift_value(const Word& period, size_t i);

}  // namespace cfs
