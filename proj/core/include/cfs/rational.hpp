#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cfs {

using BigInt = mpz_class;
using Rational = mpq_class;

// Closed interval with exact rational endpoints.
struct QInterval {
  Rational lo;
  Rational hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const QInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const QInterval& o) const { return lo <= o.hi && o.lo <= hi; }

  QInterval& operator+=(const QInterval& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }
  friend QInterval operator+(QInterval a, const QInterval& b) { return a += b; }
  friend QInterval operator+(const Rational& c, QInterval a) {
    a.lo += c;
    a.hi += c;
    return a;
  }
  friend bool operator==(const QInterval& a, const QInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }

  static QInterval hull(const QInterval& a, const QInterval& b) {
    return {a.lo <= b.lo ? a.lo : b.lo, a.hi >= b.hi ? a.hi : b.hi};
  }
};

// Accepts "p/q", plain integers and decimal literals ("3.334384", "-0.5").
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);  // canonical "p/q" (or "p" when q == 1)

// Largest/smallest representable double on the safe side of q. Used to carry
// exact interval data into double-valued estimators without losing the
// enclosure property.
double round_down(const Rational& q);
double round_up(const Rational& q);

// Fixed-point decimal expansion of q truncated toward zero, `digits` places.
std::string decimal_string(const Rational& q, int digits);

std::string format_double(double x);  // 17 significant digits, locale-free

// Exact ceil(e^r) for integer r >= 0. e^r is irrational for r >= 1, so
// q >= exp_ceil(r) is equivalent to 1/q <= e^{-r} over the integers.
BigInt exp_ceil(unsigned r);

}  // namespace cfs
