#include "cfs/dimension.hpp"

#include "cfs/continuant.hpp"
#include "cfs/decompose.hpp"
#include "cfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace cfs {

namespace {

using u128 = unsigned __int128;

u128 exp_threshold(int r) {
  if (r < 0) throw std::invalid_argument("negative covering scale");
  if (r > 80) throw std::invalid_argument("covering scale too large for fast path");
  BigInt e = exp_ceil(static_cast<unsigned>(r));
  u128 out = 0;
  BigInt rest = e;
  int shift = 0;
  while (rest > 0) {
    out |= static_cast<u128>(mpz_get_ui(BigInt(rest & 0xffffffff).get_mpz_t()))
           << shift;
    rest >>= 32;
    shift += 32;
  }
  return out;
}

// Shared DFS core: continuants advance in 128-bit integers, emit when
// q(q+q') >= ceil(e^r). Branching is supplied by the caller.
struct CoverCounter {
  u128 threshold;
  uint64_t budget;
  uint64_t count = 0;

  bool emit_or_descend(u128 q, u128 q_prev) const {
    return q * (q + q_prev) >= threshold;
  }
  void emit() {
    if (++count > budget)
      throw budget_error("covering count budget exceeded (partial count " +
                         std::to_string(count - 1) + ")");
  }
};

void cover_free(CoverCounter& cc, const std::vector<int>& alphabet, u128 q,
                u128 q_prev) {
  if (cc.emit_or_descend(q, q_prev)) {
    cc.emit();
    return;
  }
  for (int b : alphabet) cover_free(cc, alphabet, b * q + q_prev, q);
}

struct AutomatonCover {
  const SubshiftAutomaton& a;
  CoverCounter cc;
  size_t len;

  explicit AutomatonCover(const SubshiftAutomaton& aut) : a(aut), len(aut.word_len()) {}

  // [lo, hi): states whose word starts with the current short prefix.
  uint32_t lower_bound(uint32_t lo, uint32_t hi, size_t depth, uint8_t sym) const {
    while (lo < hi) {
      uint32_t mid = lo + (hi - lo) / 2;
      if (a.symbols[size_t{mid} * len + depth] < sym)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  void short_node(uint32_t lo, uint32_t hi, size_t depth, u128 q, u128 q_prev) {
    if (cc.emit_or_descend(q, q_prev)) {
      cc.emit();
      return;
    }
    if (depth + 1 == len) {
      // appending the final window symbol lands on a unique full state
      for (uint32_t s = lo; s < hi; ++s) {
        uint8_t sym = a.symbols[size_t{s} * len + depth];
        long_node(s, static_cast<u128>(sym) * q + q_prev, q);
      }
      return;
    }
    uint32_t at = lo;
    while (at < hi) {
      uint8_t sym = a.symbols[size_t{at} * len + depth];
      uint32_t next = lower_bound(at, hi, depth, sym + 1);
      short_node(at, next, depth + 1, static_cast<u128>(sym) * q + q_prev, q);
      at = next;
    }
  }

  void long_node(uint32_t state, u128 q, u128 q_prev) {
    if (cc.emit_or_descend(q, q_prev)) {
      cc.emit();
      return;
    }
    for (uint32_t tgt : a.successors(state)) {
      uint8_t sym = a.symbols[size_t{tgt} * len + len - 1];
      long_node(tgt, static_cast<u128>(sym) * q + q_prev, q);
    }
  }

  void run() {
    if (a.size() == 0) return;
    if (len == 1) {
      for (uint32_t s = 0; s < a.size(); ++s)
        long_node(s, a.symbols[s], 1);
      return;
    }
    uint32_t lo = 0, hi = static_cast<uint32_t>(a.size());
    uint32_t at = lo;
    while (at < hi) {
      uint8_t sym = a.symbols[size_t{at} * len];
      uint32_t next = lower_bound(at, hi, 0, sym + 1);
      short_node(at, next, 1, sym, 1);
      at = next;
    }
  }
};

std::vector<int> checked_alphabet(const std::vector<int>& alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("empty alphabet");
  std::vector<int> out = alphabet;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int b : out)
    if (b < 1 || b > 200) throw std::invalid_argument("alphabet symbol out of range");
  return out;
}

}  // namespace

uint64_t covering_count(const std::vector<int>& alphabet, int r, uint64_t budget) {
  std::vector<int> ab = checked_alphabet(alphabet);
  CoverCounter cc{exp_threshold(r), budget};
  for (int b : ab) cover_free(cc, ab, b, 1);
  return cc.count;
}

uint64_t covering_count(const SubshiftAutomaton& a, int r, uint64_t budget) {
  AutomatonCover cover(a);
  cover.cc = CoverCounter{exp_threshold(r), budget};
  cover.run();
  return cover.cc.count;
}

uint64_t covering_count(const SubshiftAutomaton& a, std::span<const uint32_t> comp,
                        int r, uint64_t budget) {
  SubshiftAutomaton sub = induced_subautomaton(a, comp);
  return covering_count(sub, r, budget);
}

namespace {

DimensionEstimate boxdim_from_counts(
    const std::vector<std::pair<int, uint64_t>>& table, int r_lo, int r_max) {
  DimensionEstimate est;
  est.method = DimMethod::boxcount;
  est.count_table = table;
  double ratio_max = 0.0;
  double diff_min = HUGE_VAL;
  for (size_t i = 0; i < table.size(); ++i) {
    auto [r, c] = table[i];
    if (r < r_lo || r > r_max || c == 0) continue;
    ratio_max = std::max(ratio_max, std::log(double(c)) / r);
    if (i > 0 && table[i - 1].second > 0) {
      double diff = std::log(double(c)) - std::log(double(table[i - 1].second));
      diff_min = std::min(diff_min, diff);
    }
  }
  if (!std::isfinite(diff_min)) diff_min = 0.0;
  est.hi = ratio_max;
  est.lo = std::clamp(diff_min, 0.0, est.hi);
  return est;
}

template <typename CountFn>
DimensionEstimate boxdim_generic(CountFn&& count, int r_max) {
  if (r_max < 4) throw std::invalid_argument("r_max must be >= 4");
  int r_lo = r_max / 2;
  std::vector<std::pair<int, uint64_t>> table;
  for (int r = r_lo - 1; r <= r_max; ++r) table.emplace_back(r, count(r));
  return boxdim_from_counts(table, r_lo, r_max);
}

}  // namespace

DimensionEstimate boxdim_estimate(const std::vector<int>& alphabet, int r_max,
                                  uint64_t budget) {
  return boxdim_generic(
      [&](int r) { return covering_count(alphabet, r, budget); }, r_max);
}

DimensionEstimate boxdim_estimate(const SubshiftAutomaton& a, int r_max,
                                  uint64_t budget) {
  if (a.empty()) return DimensionEstimate{};
  return boxdim_generic([&](int r) { return covering_count(a, r, budget); },
                        r_max);
}

DimensionEstimate boxdim_estimate(const SubshiftAutomaton& a,
                                  std::span<const uint32_t> comp, int r_max,
                                  uint64_t budget) {
  SubshiftAutomaton sub = induced_subautomaton(a, comp);
  return boxdim_estimate(sub, r_max, budget);
}

WeightedAutomaton cylinder_weight_automaton(const SubshiftAutomaton& a,
                                            std::span<const uint32_t> comp) {
  std::vector<uint32_t> keep(comp.begin(), comp.end());
  std::sort(keep.begin(), keep.end());
  std::vector<uint32_t> remap(a.size(), UINT32_MAX);
  for (size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<uint32_t>(i);

  WeightedAutomaton w;
  w.states = keep.size();
  size_t len = a.word_len();
  for (size_t i = 0; i < keep.size(); ++i) {
    Continuants c = convergents(a.state_as_word(keep[i]));
    Rational parent_len = cylinder_interval(c).length;
    for (uint32_t tgt : a.successors(keep[i])) {
      if (remap[tgt] == UINT32_MAX) continue;
      Continuants ext = c;
      ext.extend(a.symbols[size_t{tgt} * len + len - 1]);
      Rational ratio = cylinder_interval(ext).length / parent_len;
      w.edges.push_back({static_cast<uint32_t>(i), remap[tgt], ratio.get_d()});
    }
  }
  return w;
}

namespace {

bool weighted_is_strongly_connected(const WeightedAutomaton& w) {
  if (w.states == 0) return false;
  std::vector<std::vector<uint32_t>> out(w.states), in(w.states);
  for (const auto& e : w.edges) {
    out[e.from].push_back(e.to);
    in[e.to].push_back(e.from);
  }
  auto sweep = [&](const std::vector<std::vector<uint32_t>>& adj) {
    std::vector<char> seen(w.states, 0);
    std::vector<uint32_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      uint32_t v = stack.back();
      stack.pop_back();
      for (uint32_t x : adj[v])
        if (!seen[x]) {
          seen[x] = 1;
          stack.push_back(x);
        }
    }
    return std::count(seen.begin(), seen.end(), char(1)) ==
           static_cast<long>(w.states);
  };
  return sweep(out) && sweep(in);
}

bool is_pure_cycle(const WeightedAutomaton& w) {
  std::vector<uint32_t> outdeg(w.states, 0);
  for (const auto& e : w.edges) ++outdeg[e.from];
  return std::all_of(outdeg.begin(), outdeg.end(),
                     [](uint32_t d) { return d == 1; });
}

// Spectral radius by power iteration on M(s) + I (the shift keeps periodic
// transition structures converging). Start vector all-ones, stop when the
// L1-growth factor settles below tol, hard cap 1e5 sweeps.
double spectral_radius(const WeightedAutomaton& w, double s, double tol) {
  std::vector<double> v(w.states, 1.0), u(w.states, 0.0);
  std::vector<double> pw(w.edges.size());
  for (size_t k = 0; k < w.edges.size(); ++k)
    pw[k] = std::pow(w.edges[k].weight, s);
  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    std::fill(u.begin(), u.end(), 0.0);
    for (size_t k = 0; k < w.edges.size(); ++k)
      u[w.edges[k].from] += pw[k] * v[w.edges[k].to];
    double growth = 0.0, mass = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
      u[i] += v[i];  // +I shift
      growth += u[i];
      mass += v[i];
    }
    double next = growth / mass;
    for (double& x : u) x /= growth;
    std::swap(u, v);
    if (it > 4 && std::fabs(next - lambda) < tol) return next - 1.0;
    lambda = next;
  }
  return lambda - 1.0;
}

}  // namespace

DimensionEstimate pressure_dim(const WeightedAutomaton& w, double tol) {
  if (w.states == 0 || w.edges.empty())
    throw std::invalid_argument("pressure_dim: empty automaton");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  for (const auto& e : w.edges)
    if (!(e.weight > 0) || !std::isfinite(e.weight))
      throw std::invalid_argument("weights must be positive and finite");
  if (!weighted_is_strongly_connected(w))
    throw std::invalid_argument("pressure_dim: input not strongly connected");

  DimensionEstimate est;
  est.method = DimMethod::pressure;
  if (is_pure_cycle(w)) {
    bool contracting = std::all_of(w.edges.begin(), w.edges.end(),
                                   [](const auto& e) { return e.weight < 1.0; });
    if (contracting) return est;  // exactly zero, no solver run
  }

  double ptol = tol / 10.0;
  double lo = 0.0, hi = 1.0;
  double rho_hi = spectral_radius(w, hi, ptol);
  est.bisection_trace.emplace_back(hi, rho_hi);
  if (rho_hi >= 1.0) {
    est.lo = est.hi = 1.0;  // dimension capped at 1 for these linear sets
    return est;
  }
  double rho_lo = spectral_radius(w, lo, ptol);
  est.bisection_trace.emplace_back(lo, rho_lo);
  if (rho_lo < 1.0)
    throw std::invalid_argument("pressure_dim: no cycle at s=0 (rho < 1)");
  while (hi - lo > tol) {
    double mid = lo + (hi - lo) / 2;
    double rho = spectral_radius(w, mid, ptol);
    est.bisection_trace.emplace_back(mid, rho);
    if (rho >= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  est.lo = lo;
  est.hi = hi;
  return est;
}

DimensionEstimate dim_finite_type(const ComponentDecomposition& d,
                                  const std::vector<DimensionEstimate>& unstable,
                                  const std::vector<DimensionEstimate>& stable) {
  size_t h = d.subhorseshoes.size();
  if (unstable.size() != h || stable.size() != h)
    throw std::invalid_argument("dim_finite_type: estimate per subhorseshoe required");
  DimensionEstimate est;
  est.method = DimMethod::boxcount;
  double lo = 0.0, hi = 0.0;
  for (size_t i = 0; i < h; ++i) {
    lo = std::max(lo, 2 * unstable[i].lo);
    hi = std::max(hi, 2 * unstable[i].hi);
  }
  for (auto [i, j] : d.transient_pairs) {
    // path i -> j: backward limit in i, forward limit in j
    lo = std::max(lo, stable[i].lo + unstable[j].lo);
    hi = std::max(hi, stable[i].hi + unstable[j].hi);
  }
  est.lo = lo;
  est.hi = hi;
  return est;
}

DimensionEstimate sumset_boxdim(const std::vector<int>& b1,
                                const std::vector<int>& b2, int depth,
                                uint64_t pair_budget) {
  std::vector<int> a1 = checked_alphabet(b1), a2 = checked_alphabet(b2);
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");

  auto cylinders = [&](const std::vector<int>& ab) {
    std::vector<std::pair<double, double>> out;
    // Depth-first over all words of the given length.
    struct Node {
      Continuants c;
      int depth;
    };
    std::vector<Node> stack;
    for (auto it = ab.rbegin(); it != ab.rend(); ++it) {
      Continuants c;
      c.extend(*it);
      stack.push_back({c, 1});
    }
    while (!stack.empty()) {
      Node n = stack.back();
      stack.pop_back();
      if (n.depth == depth) {
        CylinderInterval ci = cylinder_interval(n.c);
        out.emplace_back(round_down(ci.lo), round_up(ci.hi));
        continue;
      }
      for (auto it = ab.rbegin(); it != ab.rend(); ++it) {
        Node m = n;
        m.c.extend(*it);
        ++m.depth;
        stack.push_back(m);
      }
    }
    return out;
  };

  auto c1 = cylinders(a1), c2 = cylinders(a2);
  uint64_t pairs = static_cast<uint64_t>(c1.size()) * c2.size();
  if (pairs > pair_budget) throw budget_error("sumset pair budget exceeded");

  std::vector<std::pair<double, double>> sums;
  sums.reserve(pairs);
  double delta = 0.0;
  for (const auto& [l1, h1] : c1)
    for (const auto& [l2, h2] : c2) {
      double lo = std::nextafter(l1 + l2, -HUGE_VAL);
      double hi = std::nextafter(h1 + h2, HUGE_VAL);
      sums.emplace_back(lo, hi);
      delta = std::max(delta, hi - lo);
    }
  std::sort(sums.begin(), sums.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : sums) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }

  // Covering number at the given scale: fragments separated by less than one
  // box width share boxes, so cluster first, then count by length.
  auto boxes = [&](double scale) {
    uint64_t n = 0;
    double cu = 0, cv = -HUGE_VAL;
    auto flush = [&] {
      if (cv < cu) return;
      n += std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil((cv - cu) / scale)));
    };
    for (const auto& [u, v] : merged) {
      if (u - cv <= scale) {
        cv = std::max(cv, v);
      } else {
        flush();
        cu = u;
        cv = v;
      }
    }
    flush();
    return n;
  };

  DimensionEstimate est;
  est.method = DimMethod::boxcount;
  uint64_t n1 = boxes(delta), n2 = boxes(delta * 2);
  est.count_table.emplace_back(1, n1);
  est.count_table.emplace_back(2, n2);
  double inv = std::log(1.0 / delta);
  if (inv <= 0) {
    est.lo = 0;
    est.hi = 1;
    return est;
  }
  double d1 = std::log(double(n1)) / inv;
  double d2 = std::log(double(n2)) / (inv - std::log(2.0));
  double slope = std::log(double(n1) / double(n2)) / std::log(2.0);
  est.lo = std::clamp(std::min({d1, d2, slope}), 0.0, 1.0);
  est.hi = std::clamp(std::max({d1, d2, slope}), 0.0, 1.0);
  return est;
}

}  // namespace cfs
