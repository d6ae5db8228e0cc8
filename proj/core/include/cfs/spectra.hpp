#pragma once

#include "cfs/automaton.hpp"
#include "cfs/quadratic.hpp"
#include "cfs/rational.hpp"
#include "cfs/word.hpp"

#include <vector>

namespace cfs {

enum class SpectrumKind { markov, lagrange };

struct SpectrumPoint {
  QuadraticValue value;
  QInterval enclosure;  // width <= requested tolerance
  PeriodicSeq witness;
  SpectrumKind kind = SpectrumKind::markov;
};

// m(theta) = sup_i f(sigma^i theta): exact max over the cyclic shifts of a
// purely periodic sequence.
SpectrumPoint markov_value(const PeriodicSeq& s, const Rational& tol);

// l(theta) = limsup f: the preperiod is ignored, the periodic tail decides.
SpectrumPoint lagrange_value(const PeriodicSeq& s, const Rational& tol);

struct MarkovTriple {
  BigInt x, y, z;  // x <= y <= z, x^2 + y^2 + z^2 = 3xyz

  friend bool operator==(const MarkovTriple&, const MarkovTriple&) = default;
};

// Breadth-first enumeration of the Markov tree from (1,1,1) by the Vieta
// mutations, deduplicated and sorted by z.
std::vector<MarkovTriple> markov_triples(size_t limit);

// sqrt(9 - 4/z^2), the Lagrange point below 3 attached to a Markov number.
QuadraticValue triple_spectrum_value(const BigInt& z);

struct CrosscheckRow {
  MarkovTriple triple;
  QuadraticValue target;   // sqrt(9 - 4/z^2)
  bool matched = false;
  Word witness_period;     // found by exhaustive search when matched
  bool exact = false;      // syntactic equality of the quadratic values
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  size_t max_period_len = 0;
};

// Pairs the first `count` Markov spectrum points with periodic witnesses
// over {1,2}* up to max_period_len, matching by enclosure overlap at tol.
CrosscheckReport low_spectrum_crosscheck(size_t count, size_t max_period_len,
                                         const Rational& tol);

// Certified interval containing max f over a subhorseshoe, from windows
// extended by `refinement` symbols on each side along in-component paths.
QInterval max_f_over_component(const SubshiftAutomaton& a,
                               std::span<const uint32_t> comp, int refinement);

}  // namespace cfs
