#pragma once

#include "cfs/rational.hpp"
#include "cfs/word.hpp"

namespace cfs {

// Convergent data of a finite continued fraction [0; a_1, ..., a_n]:
// p/q is the value, p_prev/q_prev the previous convergent. Seeded with
// p_{-1}/q_{-1} = 1/0 and p_0/q_0 = 0/1, advanced by
//   p_k = a_k p_{k-1} + p_{k-2},  q_k = a_k q_{k-1} + q_{k-2}.
struct Continuants {
  BigInt p = 0, q = 1;
  BigInt p_prev = 1, q_prev = 0;

  void extend(int symbol);
  // Determinant p*q_prev - p_prev*q, always +-1.
  BigInt det() const { return p * q_prev - p_prev * q; }
};

Continuants convergents(const Word& w);

// The cylinder I^u(w): continued-fraction values starting with the word w.
// Endpoints are p/q and (p+p_prev)/(q+q_prev); |I| = 1/(q(q+q_prev)).
struct CylinderInterval {
  Rational lo, hi;
  Rational length;

  QInterval interval() const { return {lo, hi}; }
};

CylinderInterval cylinder_interval(const Word& w);
CylinderInterval cylinder_interval(const Continuants& c);

}  // namespace cfs
