#include "cfs/rational.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cfs {

namespace {

// Always base 10: the mpz string constructor would read leading zeros as
// octal under its auto-detecting default.
BigInt parse_int10(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  return BigInt(s, 10);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_int10(text.substr(0, slash));
    BigInt den = parse_int10(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(parse_int10(text));
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (frac_len == 0) return Rational(parse_int10(text.substr(0, dot)));
  BigInt den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  // "-0.5" needs the sign applied to the whole value, not just the int part
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits = digits.substr(1);
  Rational q(parse_int10(digits), den);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double round_down(const Rational& q) {
  double d = q.get_d();
  if (!std::isfinite(d)) throw std::overflow_error("rational out of double range");
  while (Rational(d) > q) d = std::nextafter(d, -HUGE_VAL);
  return d;
}

double round_up(const Rational& q) {
  double d = q.get_d();
  if (!std::isfinite(d)) throw std::overflow_error("rational out of double range");
  while (Rational(d) < q) d = std::nextafter(d, HUGE_VAL);
  return d;
}

std::string decimal_string(const Rational& q, int digits) {
  if (digits < 0) throw std::invalid_argument("negative digit count");
  bool neg = q < 0;
  Rational a = neg ? Rational(-q) : q;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = (a.get_num() * scale) / a.get_den();  // floor for a >= 0
  BigInt ip = scaled / scale;
  std::string out = (neg ? "-" : "") + ip.get_str();
  if (digits > 0) {
    BigInt fp = scaled % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), digits - static_cast<int>(frac.size()), '0');
    out += "." + frac;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

// Enclosure of e as exact rationals: sum of 1/k! for k <= 40 plus tail bound.
void euler_enclosure(Rational& lo, Rational& hi) {
  Rational sum = 0;
  BigInt fact = 1;
  for (int k = 0; k <= 40; ++k) {
    if (k > 0) fact *= k;
    sum += Rational(1, fact);
  }
  lo = sum;
  hi = sum + Rational(2, fact * 41);
}

// Outward rounding to denominator 2^128 keeps repeated products small.
const BigInt kFix = BigInt(1) << 128;

Rational fix_down(const Rational& q) {
  BigInt n = (q.get_num() * kFix) / q.get_den();
  return Rational(n, kFix);
}

Rational fix_up(const Rational& q) {
  BigInt n = (q.get_num() * kFix + q.get_den() - 1) / q.get_den();
  return Rational(n, kFix);
}

}  // namespace

BigInt exp_ceil(unsigned r) {
  static std::mutex mu;
  static std::map<unsigned, BigInt> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(r);
  if (it != memo.end()) return it->second;

  Rational e_lo, e_hi;
  euler_enclosure(e_lo, e_hi);
  Rational lo = 1, hi = 1;
  for (unsigned i = 0; i < r; ++i) {
    lo = fix_down(lo * e_lo);
    hi = fix_up(hi * e_hi);
  }
  BigInt fl = lo.get_num() / lo.get_den();
  BigInt fh = hi.get_num() / hi.get_den();
  if (fl != fh && r > 0) throw std::logic_error("exp enclosure too wide");
  BigInt result = (r == 0) ? BigInt(1) : fl + 1;
  memo[r] = result;
  return result;
}

}  // namespace cfs
