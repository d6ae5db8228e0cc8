#include "cfs/quadratic.hpp"

#include "cfs/continuant.hpp"

#include <sstream>
#include <stdexcept>

namespace cfs {

namespace {

// Pulls square factors out of d: d = rest * f^2. Trial division runs to
// 10^6 (fast native path when d fits a machine word), then a perfect-square
// check mops up. Beyond that range d is accepted as squarefree; the desk
// inputs here (traces of short-word continuant matrices) stay well inside.
void squarefree_extract(BigInt& d, BigInt& f) {
  f = 1;
  if (d <= 1) return;
  if (d.fits_ulong_p()) {
    unsigned long n = d.get_ui();
    unsigned long r = 1;
    for (unsigned long p = 2; p * p <= n && p <= 1000000ul; ++p) {
      while (n % (p * p) == 0) {
        n /= p * p;
        r *= p;
      }
    }
    d = n;
    f = r;
  } else {
    for (unsigned long p = 2; p <= 65536ul; ++p) {
      BigInt p2 = BigInt(p) * p;
      if (p2 > d) break;
      while (mpz_divisible_p(d.get_mpz_t(), p2.get_mpz_t())) {
        d /= p2;
        f *= p;
      }
    }
  }
  if (d > 1 && mpz_perfect_square_p(d.get_mpz_t())) {
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    f *= s;
    d = 1;
  }
}

int sign_of(const BigInt& x) { return mpz_sgn(x.get_mpz_t()); }

// Exact sign of X + Y*sqrt(d), d >= 1 non-square.
int sign_linear(const BigInt& X, const BigInt& Y, const BigInt& d) {
  int sx = sign_of(X), sy = sign_of(Y);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  BigInt x2 = X * X;
  BigInt y2d = Y * Y * d;
  if (x2 == y2d) return 0;
  return (x2 > y2d) ? sx : sy;
}

}  // namespace

QuadraticValue::QuadraticValue(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw std::invalid_argument("zero denominator");
  if (d_ < 0) throw std::invalid_argument("negative radicand");
  normalize();
}

void QuadraticValue::normalize() {
  if (d_ == 0) {
    b_ = 0;  // sqrt(0) contributes nothing
  }
  if (b_ != 0) {
    BigInt f;
    squarefree_extract(d_, f);
    b_ *= f;
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    }
  }
  if (b_ == 0) d_ = 1;
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

QuadraticValue QuadraticValue::from_rational(const Rational& r) {
  return QuadraticValue(r.get_num(), 0, r.get_den(), 1);
}

QuadraticValue QuadraticValue::sqrt_of(const BigInt& n) {
  if (n < 0) throw std::invalid_argument("negative radicand");
  return QuadraticValue(0, 1, 1, n);
}

namespace {

// Promotes operands into one field; throws if both are irrational with
// different radicands.
void align(const QuadraticValue& x, const QuadraticValue& y, BigInt& d) {
  if (x.is_rational()) {
    d = y.d();
  } else if (y.is_rational()) {
    d = x.d();
  } else if (x.d() == y.d()) {
    d = x.d();
  } else {
    throw std::domain_error("incompatible quadratic fields: sqrt(" +
                            x.d().get_str() + ") vs sqrt(" + y.d().get_str() +
                            ")");
  }
}

}  // namespace

QuadraticValue operator+(const QuadraticValue& x, const QuadraticValue& y) {
  BigInt d;
  align(x, y, d);
  return QuadraticValue(x.a() * y.c() + y.a() * x.c(),
                        x.b() * y.c() + y.b() * x.c(), x.c() * y.c(), d);
}

QuadraticValue QuadraticValue::operator-() const {
  return QuadraticValue(-a_, -b_, c_, d_);
}

QuadraticValue operator-(const QuadraticValue& x, const QuadraticValue& y) {
  return x + (-y);
}

QuadraticValue operator*(const QuadraticValue& x, const QuadraticValue& y) {
  BigInt d;
  align(x, y, d);
  // (a1 + b1 s)(a2 + b2 s) = a1 a2 + b1 b2 d + (a1 b2 + a2 b1) s
  return QuadraticValue(x.a() * y.a() + x.b() * y.b() * d,
                        x.a() * y.b() + y.a() * x.b(), x.c() * y.c(), d);
}

QuadraticValue operator/(const QuadraticValue& x, const QuadraticValue& y) {
  BigInt d;
  align(x, y, d);
  // 1/((a2 + b2 s)/c2) = c2 (a2 - b2 s) / (a2^2 - b2^2 d)
  BigInt norm = y.a() * y.a() - y.b() * y.b() * d;
  if (norm == 0) throw std::domain_error("division by zero");
  QuadraticValue inv(y.c() * y.a(), -y.c() * y.b(), norm, d);
  return x * inv;
}

QuadraticValue QuadraticValue::mobius(const BigInt& A, const BigInt& B,
                                      const BigInt& C, const BigInt& D) const {
  BigInt x1 = A * a_ + B * c_, y1 = A * b_;
  BigInt x2 = C * a_ + D * c_, y2 = C * b_;
  BigInt norm = x2 * x2 - y2 * y2 * d_;
  if (norm == 0) throw std::domain_error("mobius pole");
  return QuadraticValue(x1 * x2 - y1 * y2 * d_, y1 * x2 - x1 * y2, norm, d_);
}

int QuadraticValue::sign() const { return sign_linear(a_, b_, d_); }

int QuadraticValue::compare(const QuadraticValue& o) const {
  return (*this - o).sign();
}

int QuadraticValue::compare(const Rational& r) const {
  return compare(from_rational(r));
}

QInterval QuadraticValue::enclosure(const Rational& tol) const {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (b_ == 0) return {Rational(a_, c_), Rational(a_, c_)};
  // sqrt(d) in [s, s+1]/2^k with s = isqrt(d 4^k); width |b|/(c 2^k) <= tol.
  Rational need(abs(b_), c_);
  need.canonicalize();
  need /= tol;
  unsigned k = 1;
  BigInt ceil_need = (need.get_num() + need.get_den() - 1) / need.get_den();
  k = std::max<size_t>(1, mpz_sizeinbase(ceil_need.get_mpz_t(), 2));
  BigInt scaled = d_ << (2 * k);
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  BigInt pow2 = BigInt(1) << k;
  Rational root_lo(s, pow2), root_hi(s + 1, pow2);
  root_lo.canonicalize();
  root_hi.canonicalize();
  Rational lo, hi;
  if (b_ > 0) {
    lo = (a_ + b_ * root_lo) / c_;
    hi = (a_ + b_ * root_hi) / c_;
  } else {
    lo = (a_ + b_ * root_hi) / c_;
    hi = (a_ + b_ * root_lo) / c_;
  }
  return {lo, hi};
}

double QuadraticValue::to_double() const {
  QInterval e = enclosure(Rational(1, BigInt(1) << 60));
  Rational mid = e.lo + (e.hi - e.lo) / 2;
  return mid.get_d();
}

std::string QuadraticValue::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_.get_str();
    if (c_ != 1) os << "/" << c_.get_str();
    return os.str();
  }
  os << "(";
  if (a_ != 0) os << a_.get_str() << (b_ > 0 ? "+" : "");
  if (b_ == -1)
    os << "-";
  else if (b_ != 1)
    os << b_.get_str() << "*";
  os << "sqrt(" << d_.get_str() << "))";
  std::string out = os.str();
  if (c_ != 1) out += "/" + c_.get_str();
  return out;
}

QuadraticValue cf_periodic_value(const Word& period) {
  if (!period.valid()) throw std::invalid_argument("invalid period word");
  Continuants m = convergents(period);
  // x = (p + p_prev x)/(q + q_prev x):  q_prev x^2 + (q - p_prev) x - p = 0,
  // positive root.
  BigInt A = m.q_prev, B = m.q - m.p_prev, C = -m.p;
  BigInt disc = B * B - 4 * A * C;
  QuadraticValue root =
      (QuadraticValue::sqrt_of(disc) - QuadraticValue::from_rational(Rational(B))) /
      QuadraticValue::from_rational(Rational(2 * A));
  return root;
}

EnclosedQuadratic cf_value(const PeriodicSeq& s, const Rational& tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (!s.valid()) throw std::invalid_argument("invalid periodic sequence");
  QuadraticValue x = cf_periodic_value(s.period);
  if (!s.preperiod.empty()) {
    Continuants m = convergents(s.preperiod);
    x = x.mobius(m.p_prev, m.p, m.q_prev, m.q);
  }
  return {x, x.enclosure(tol)};
}

QuadraticValue f_shift_value(const Word& period, size_t i) {
  if (!period.valid()) throw std::invalid_argument("invalid period word");
  size_t m = period.size();
  i %= m;
  Word right = period.rotated_left((i + 1) % m);
  Word left = period.reversed().rotated_left((m - i) % m);
  QuadraticValue f = QuadraticValue::from_rational(Rational(period[i]));
  return f + cf_periodic_value(right) + cf_periodic_value(left);
}

}  // namespace cfs
