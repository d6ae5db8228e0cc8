#include "cfs/spectra.hpp"

#include "cfs/errors.hpp"
#include "cfs/fwindow.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace cfs {

SpectrumPoint markov_value(const PeriodicSeq& s, const Rational& tol) {
  if (s.period.empty()) throw std::invalid_argument("empty period");
  if (!s.preperiod.empty())
    throw std::invalid_argument("markov_value requires a purely periodic sequence");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  QuadraticValue best = f_shift_value(s.period, 0);
  for (size_t i = 1; i < s.period.size(); ++i) {
    QuadraticValue v = f_shift_value(s.period, i);
    if (v.compare(best) > 0) best = v;
  }
  return {best, best.enclosure(tol), s, SpectrumKind::markov};
}

SpectrumPoint lagrange_value(const PeriodicSeq& s, const Rational& tol) {
  if (s.period.empty()) throw std::invalid_argument("empty period");
  SpectrumPoint p = markov_value({{}, s.period}, tol);
  p.witness = s;
  p.kind = SpectrumKind::lagrange;
  return p;
}

std::vector<MarkovTriple> markov_triples(size_t limit) {
  if (limit < 1) throw std::invalid_argument("limit must be >= 1");
  using Key = std::array<BigInt, 3>;  // (z, y, x) for heap order
  auto cmp = [](const Key& a, const Key& b) { return a > b; };
  std::priority_queue<Key, std::vector<Key>, decltype(cmp)> heap(cmp);
  std::set<Key> seen;
  auto push = [&](BigInt x, BigInt y, BigInt z) {
    std::array<BigInt, 3> v{std::move(x), std::move(y), std::move(z)};
    std::sort(v.begin(), v.end());
    Key k{v[2], v[1], v[0]};
    if (seen.insert(k).second) heap.push(k);
  };
  push(1, 1, 1);
  std::vector<MarkovTriple> out;
  while (out.size() < limit && !heap.empty()) {
    Key k = heap.top();
    heap.pop();
    BigInt z = k[0], y = k[1], x = k[2];
    out.push_back({x, y, z});
    push(x, z, 3 * x * z - y);
    push(y, z, 3 * y * z - x);
  }
  return out;
}

QuadraticValue triple_spectrum_value(const BigInt& z) {
  if (z < 1) throw std::invalid_argument("Markov number must be positive");
  return QuadraticValue(0, 1, z, 9 * z * z - 4);
}

namespace {

// Canonical representatives of rotation classes of {1,2}-words.
std::vector<Word> necklaces(size_t max_len) {
  std::vector<Word> out;
  for (size_t len = 1; len <= max_len; ++len) {
    size_t total = size_t{1} << len;
    for (size_t bits = 0; bits < total; ++bits) {
      std::vector<int> w(len);
      for (size_t i = 0; i < len; ++i) w[i] = ((bits >> i) & 1) ? 2 : 1;
      Word word{std::move(w)};
      bool canonical = true;
      for (size_t k = 1; k < len && canonical; ++k)
        if (word.rotated_left(k) < word) canonical = false;
      if (canonical) out.push_back(std::move(word));
    }
  }
  return out;
}

}  // namespace

CrosscheckReport low_spectrum_crosscheck(size_t count, size_t max_period_len,
                                         const Rational& tol) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  CrosscheckReport report;
  report.max_period_len = max_period_len;
  auto words = necklaces(max_period_len);
  std::vector<SpectrumPoint> points;
  points.reserve(words.size());
  for (const auto& w : words) points.push_back(markov_value({{}, w}, tol));

  for (const auto& triple : markov_triples(count)) {
    CrosscheckRow row;
    row.triple = triple;
    row.target = triple_spectrum_value(triple.z);
    QInterval target_box = row.target.enclosure(tol);
    for (size_t i = 0; i < words.size() && !row.matched; ++i) {
      if (points[i].enclosure.intersects(target_box)) {
        row.matched = true;
        row.witness_period = words[i];
        row.exact = points[i].value == row.target;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

// Every centered window of half-width (window + ref) shown by the component
// is the symbol trace of a 2*ref-step path, so one forward enumeration per
// start state covers them all exactly once.
struct MaxFScan {
  const SubshiftAutomaton& sub;  // induced on the component
  int refinement;
  uint64_t budget = 4'000'000;
  uint64_t leaves = 0;
  bool any = false;
  QInterval best;  // running [max lo, max hi]

  MaxFScan(const SubshiftAutomaton& s, int ref) : sub(s), refinement(ref) {}

  void leaf(const std::vector<int>& window) {
    if (++leaves > budget) throw budget_error("max_f refinement budget exceeded");
    QInterval r = f_window_range(Word{window}, window.size() / 2, sub.alphabet);
    if (!any) {
      best = r;
      any = true;
      return;
    }
    if (r.lo > best.lo) best.lo = r.lo;
    if (r.hi > best.hi) best.hi = r.hi;
  }

  void forward(uint32_t state, int left, std::vector<int>& window) {
    if (left == 0) {
      leaf(window);
      return;
    }
    size_t len = sub.word_len();
    for (uint32_t tgt : sub.successors(state)) {
      window.push_back(sub.state_word(tgt)[len - 1]);
      forward(tgt, left - 1, window);
      window.pop_back();
    }
  }
};

}  // namespace

QInterval max_f_over_component(const SubshiftAutomaton& a,
                               std::span<const uint32_t> comp, int refinement) {
  if (comp.empty()) throw std::invalid_argument("empty component");
  if (refinement < 0) throw std::invalid_argument("negative refinement");
  SubshiftAutomaton sub = induced_subautomaton(a, comp);
  // Strong connectivity: forward and backward sweeps from state 0.
  {
    auto sweep = [&](bool fwd) {
      std::vector<char> seen(sub.size(), 0);
      std::vector<uint32_t> stack{0};
      seen[0] = 1;
      std::vector<std::vector<uint32_t>> preds;
      if (!fwd) {
        preds.resize(sub.size());
        for (uint32_t v = 0; v < sub.size(); ++v)
          for (uint32_t w : sub.successors(v)) preds[w].push_back(v);
      }
      while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        auto nexts = fwd ? std::vector<uint32_t>(sub.successors(v).begin(),
                                                 sub.successors(v).end())
                         : preds[v];
        for (uint32_t w : nexts)
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      return std::count(seen.begin(), seen.end(), char(1)) ==
             static_cast<long>(sub.size());
    };
    if (!sweep(true) || !sweep(false))
      throw std::invalid_argument("component is not strongly connected");
  }
  MaxFScan scan(sub, refinement);
  for (uint32_t v = 0; v < sub.size(); ++v) {
    auto w = sub.state_word(v);
    std::vector<int> window(w.begin(), w.end());
    scan.forward(v, 2 * refinement, window);
  }
  return scan.best;
}

}  // namespace cfs
