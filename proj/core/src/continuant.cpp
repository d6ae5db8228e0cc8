#include "cfs/continuant.hpp"

#include <sstream>
#include <stdexcept>

namespace cfs {

Word Word::rotated_left(size_t k) const {
  if (syms.empty()) return {};
  k %= syms.size();
  std::vector<int> out;
  out.reserve(syms.size());
  out.insert(out.end(), syms.begin() + k, syms.end());
  out.insert(out.end(), syms.begin(), syms.begin() + k);
  return Word(std::move(out));
}

Word Word::concat(const Word& other) const {
  std::vector<int> out = syms;
  out.insert(out.end(), other.syms.begin(), other.syms.end());
  return Word(std::move(out));
}

std::string Word::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < syms.size(); ++i) {
    if (i) os << ',';
    os << syms[i];
  }
  os << ')';
  return os.str();
}

bool Word::valid(int bound) const {
  if (syms.empty()) return false;
  for (int s : syms) {
    if (s < 1) return false;
    if (bound > 0 && s > bound) return false;
  }
  return true;
}

void Continuants::extend(int symbol) {
  if (symbol < 1) throw std::invalid_argument("partial quotient must be >= 1");
  BigInt np = symbol * p + p_prev;
  BigInt nq = symbol * q + q_prev;
  p_prev = p;
  q_prev = q;
  p = np;
  q = nq;
}

Continuants convergents(const Word& w) {
  if (!w.valid()) throw std::invalid_argument("invalid word");
  Continuants c;
  for (int s : w) c.extend(s);
  return c;
}

CylinderInterval cylinder_interval(const Continuants& c) {
  Rational a(c.p, c.q);
  Rational b(c.p + c.p_prev, c.q + c.q_prev);
  a.canonicalize();
  b.canonicalize();
  CylinderInterval ci;
  if (a <= b) {
    ci.lo = a;
    ci.hi = b;
  } else {
    ci.lo = b;
    ci.hi = a;
  }
  ci.length = Rational(1, c.q * (c.q + c.q_prev));
  return ci;
}

CylinderInterval cylinder_interval(const Word& w) {
  return cylinder_interval(convergents(w));
}

}  // namespace cfs
