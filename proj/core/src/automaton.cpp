#include "cfs/automaton.hpp"

#include "cfs/errors.hpp"
#include "cfs/fwindow.hpp"
#include "cfs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <stdexcept>

namespace cfs {

Word SubshiftAutomaton::state_as_word(size_t i) const {
  auto w = state_word(i);
  return Word(std::vector<int>(w.begin(), w.end()));
}

namespace {

struct WordLess {
  size_t len;
  const uint8_t* base;
  bool operator()(uint32_t i, std::span<const uint8_t> w) const {
    return std::lexicographical_compare(base + i * len, base + (i + 1) * len,
                                        w.begin(), w.end());
  }
};

}  // namespace

std::optional<uint32_t> SubshiftAutomaton::find_state(
    std::span<const uint8_t> w) const {
  if (w.size() != word_len()) return std::nullopt;
  size_t len = word_len();
  uint32_t lo = 0, hi = static_cast<uint32_t>(size());
  while (lo < hi) {
    uint32_t mid = lo + (hi - lo) / 2;
    int cmp = std::memcmp(symbols.data() + size_t{mid} * len, w.data(), len);
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() &&
      std::memcmp(symbols.data() + size_t{lo} * len, w.data(), len) == 0)
    return lo;
  return std::nullopt;
}

std::optional<uint32_t> SubshiftAutomaton::find_state(const Word& w) const {
  std::vector<uint8_t> buf(w.begin(), w.end());
  return find_state(std::span<const uint8_t>(buf));
}

namespace {

// Certified double endpoints of the two one-sided tail hulls, per tail word
// of length `window` (indexed base-N). Summing pre-rounded doubles and
// stepping one ulp outward keeps the enclosure property.
struct TailTables {
  std::vector<double> lo, hi;
  int alphabet;
  int window;

  void build(int N, int w) {
    alphabet = N;
    window = w;
    size_t count = 1;
    for (int i = 0; i < w; ++i) count *= N;
    lo.resize(count);
    hi.resize(count);
    std::vector<int> digits(w, 1);
    for (size_t idx = 0; idx < count; ++idx) {
      Word tail(std::vector<int>(digits.begin(), digits.end()));
      QInterval h = w == 0 ? tail_hull(Word{}, N) : tail_hull(tail, N);
      lo[idx] = round_down(h.lo);
      hi[idx] = round_up(h.hi);
      for (int j = w - 1; j >= 0; --j) {  // increment base-N counter
        if (digits[j] < N) {
          ++digits[j];
          break;
        }
        digits[j] = 1;
      }
    }
  }
};

void attach_f_ranges(SubshiftAutomaton& a, int threads) {
  int N = a.alphabet;
  int w = a.window;
  TailTables tails;
  tails.build(N, w);
  size_t len = a.word_len();
  a.f_lo.resize(a.symbols.size() / len);
  a.f_hi.resize(a.symbols.size() / len);
  parallel_chunks(a.f_lo.size(), threads, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const uint8_t* word = a.symbols.data() + i * len;
      size_t right = 0, left = 0;
      for (int j = 0; j < w; ++j) {
        right = right * N + (word[w + 1 + j] - 1);
        left = left * N + (word[w - 1 - j] - 1);
      }
      double center = word[w];
      a.f_lo[i] = std::nextafter(center + tails.lo[right] + tails.lo[left], -HUGE_VAL);
      a.f_hi[i] = std::nextafter(center + tails.hi[right] + tails.hi[left], HUGE_VAL);
    }
  });
}

}  // namespace

SubshiftAutomaton build_full_shift(int alphabet, int window,
                                   const BuildOptions& opts) {
  if (alphabet < 1 || alphabet > 200)
    throw std::invalid_argument("alphabet bound out of range");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  size_t len = 2 * static_cast<size_t>(window) + 1;
  unsigned __int128 count = 1;
  for (size_t i = 0; i < len; ++i) {
    count *= alphabet;
    if (count > opts.state_budget)
      throw budget_error("full shift exceeds state budget");
  }
  size_t n = static_cast<size_t>(count);

  SubshiftAutomaton a;
  a.alphabet = alphabet;
  a.window = window;
  a.symbols.resize(n * len);
  {
    std::vector<uint8_t> digits(len, 1);
    for (size_t i = 0; i < n; ++i) {
      std::memcpy(a.symbols.data() + i * len, digits.data(), len);
      for (size_t j = len; j-- > 0;) {
        if (digits[j] < alphabet) {
          ++digits[j];
          break;
        }
        digits[j] = 1;
      }
    }
  }
  // Overlap transitions by index arithmetic: dropping the leading symbol and
  // appending b maps state i to (i mod N^(len-1)) * N + (b-1).
  size_t tail_mod = n / alphabet;
  a.out_start.resize(n + 1);
  a.out_edges.resize(n * alphabet);
  for (size_t i = 0; i < n; ++i) {
    a.out_start[i] = static_cast<uint32_t>(i * alphabet);
    size_t base = (i % tail_mod) * alphabet;
    for (int b = 0; b < alphabet; ++b)
      a.out_edges[i * alphabet + b] = static_cast<uint32_t>(base + b);
  }
  a.out_start[n] = static_cast<uint32_t>(n * alphabet);

  attach_f_ranges(a, opts.threads);
  return a;
}

namespace {

// Restriction to `keep` (a sorted index list), preserving canonical order.
SubshiftAutomaton restrict_to(const SubshiftAutomaton& a,
                              const std::vector<uint32_t>& keep) {
  SubshiftAutomaton r;
  r.alphabet = a.alphabet;
  r.window = a.window;
  size_t len = a.word_len();
  std::vector<uint32_t> remap(a.size(), UINT32_MAX);
  for (size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<uint32_t>(i);
  r.symbols.resize(keep.size() * len);
  r.f_lo.resize(keep.size());
  r.f_hi.resize(keep.size());
  r.out_start.assign(keep.size() + 1, 0);
  for (size_t i = 0; i < keep.size(); ++i) {
    std::memcpy(r.symbols.data() + i * len, a.symbols.data() + size_t{keep[i]} * len, len);
    r.f_lo[i] = a.f_lo[keep[i]];
    r.f_hi[i] = a.f_hi[keep[i]];
  }
  for (size_t i = 0; i < keep.size(); ++i) {
    uint32_t cnt = 0;
    for (uint32_t tgt : a.successors(keep[i]))
      if (remap[tgt] != UINT32_MAX) ++cnt;
    r.out_start[i + 1] = r.out_start[i] + cnt;
  }
  r.out_edges.resize(r.out_start.back());
  for (size_t i = 0; i < keep.size(); ++i) {
    uint32_t at = r.out_start[i];
    for (uint32_t tgt : a.successors(keep[i]))
      if (remap[tgt] != UINT32_MAX) r.out_edges[at++] = remap[tgt];
  }
  return r;
}

// Iteratively removes states with no incoming or no outgoing edge among the
// still-alive set; what survives is exactly the union of bi-infinite paths.
void cleanup_alive(const SubshiftAutomaton& a, std::vector<char>& alive) {
  size_t n = a.size();
  std::vector<uint32_t> outdeg(n, 0), indeg(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (uint32_t tgt : a.successors(i)) {
      if (!alive[tgt]) continue;
      ++outdeg[i];
      ++indeg[tgt];
    }
  }
  std::deque<uint32_t> dead;
  for (size_t i = 0; i < n; ++i)
    if (alive[i] && (outdeg[i] == 0 || indeg[i] == 0))
      dead.push_back(static_cast<uint32_t>(i));
  // Predecessor lookups piggyback on a reverse CSR built once.
  std::vector<uint32_t> in_start(n + 1, 0), in_edges(a.edge_count());
  for (uint32_t tgt : a.out_edges) ++in_start[tgt + 1];
  for (size_t i = 0; i < n; ++i) in_start[i + 1] += in_start[i];
  {
    std::vector<uint32_t> cursor(in_start.begin(), in_start.end() - 1);
    for (size_t i = 0; i < n; ++i)
      for (uint32_t tgt : a.successors(i))
        in_edges[cursor[tgt]++] = static_cast<uint32_t>(i);
  }
  while (!dead.empty()) {
    uint32_t v = dead.front();
    dead.pop_front();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (uint32_t tgt : a.successors(v)) {
      if (!alive[tgt]) continue;
      if (--indeg[tgt] == 0) dead.push_back(tgt);
    }
    for (uint32_t k = in_start[v]; k < in_start[v + 1]; ++k) {
      uint32_t src = in_edges[k];
      if (!alive[src]) continue;
      if (--outdeg[src] == 0) dead.push_back(src);
    }
  }
}

}  // namespace

SubshiftAutomaton alphabet_subshift(const std::vector<int>& alphabet, int window,
                                    const BuildOptions& opts) {
  if (alphabet.empty()) throw std::invalid_argument("empty alphabet");
  std::vector<int> ab = alphabet;
  std::sort(ab.begin(), ab.end());
  ab.erase(std::unique(ab.begin(), ab.end()), ab.end());
  int bound = ab.back();
  size_t len = 2 * static_cast<size_t>(window) + 1;
  unsigned __int128 count = 1;
  for (size_t i = 0; i < len; ++i) {
    count *= ab.size();
    if (count > opts.state_budget)
      throw budget_error("alphabet subshift exceeds state budget");
  }
  SubshiftAutomaton full = build_full_shift(bound, window, opts);
  std::vector<char> allowed(bound + 1, 0);
  for (int b : ab) allowed[b] = 1;
  std::vector<uint32_t> keep;
  for (uint32_t i = 0; i < full.size(); ++i) {
    bool ok = true;
    for (uint8_t s : full.state_word(i))
      if (!allowed[s]) {
        ok = false;
        break;
      }
    if (ok) keep.push_back(i);
  }
  return induced_subautomaton(full, keep);
}

SubshiftAutomaton induced_subautomaton(const SubshiftAutomaton& a,
                                       std::span<const uint32_t> states) {
  std::vector<uint32_t> keep(states.begin(), states.end());
  std::sort(keep.begin(), keep.end());
  return restrict_to(a, keep);
}

SubshiftAutomaton prune_sublevel(const SubshiftAutomaton& a,
                                 const std::optional<Rational>& t,
                                 PruneMode mode) {
  std::vector<char> alive(a.size(), 1);
  if (t.has_value()) {
    // round_down(t) is the largest double <= t, so the double comparison
    // f <= round_down(t) decides f <= t exactly.
    double t_dn = round_down(*t);
    for (size_t i = 0; i < a.size(); ++i) {
      double bound = (mode == PruneMode::outer) ? a.f_lo[i] : a.f_hi[i];
      alive[i] = bound <= t_dn;
    }
  }
  cleanup_alive(a, alive);
  std::vector<uint32_t> keep;
  for (size_t i = 0; i < a.size(); ++i)
    if (alive[i]) keep.push_back(static_cast<uint32_t>(i));
  if (!t.has_value() && keep.size() == a.size()) return a;
  return restrict_to(a, keep);
}

SubshiftAutomaton transpose(const SubshiftAutomaton& a) {
  size_t n = a.size();
  size_t len = a.word_len();
  // Sort reversed words to restore the canonical order.
  std::vector<uint32_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = static_cast<uint32_t>(i);
  std::vector<uint8_t> rev(n * len);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < len; ++j)
      rev[i * len + j] = a.symbols[i * len + (len - 1 - j)];
  std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
    return std::memcmp(rev.data() + size_t{x} * len, rev.data() + size_t{y} * len,
                       len) < 0;
  });
  std::vector<uint32_t> pos(n);
  for (size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<uint32_t>(i);

  SubshiftAutomaton r;
  r.alphabet = a.alphabet;
  r.window = a.window;
  r.symbols.resize(n * len);
  for (size_t i = 0; i < n; ++i)
    std::memcpy(r.symbols.data() + i * len, rev.data() + size_t{order[i]} * len, len);
  r.out_start.assign(n + 1, 0);
  for (size_t i = 0; i < n; ++i)
    for (uint32_t tgt : a.successors(i)) ++r.out_start[size_t{pos[tgt]} + 1];
  for (size_t i = 0; i < n; ++i) r.out_start[i + 1] += r.out_start[i];
  r.out_edges.resize(a.edge_count());
  {
    std::vector<uint32_t> cursor(r.out_start.begin(), r.out_start.end() - 1);
    for (size_t i = 0; i < n; ++i)
      for (uint32_t tgt : a.successors(i))
        r.out_edges[cursor[pos[tgt]]++] = pos[i];
  }
  for (size_t i = 0; i < n; ++i) {
    auto row = std::span<uint32_t>(r.out_edges.data() + r.out_start[i],
                                   r.out_edges.data() + r.out_start[i + 1]);
    std::sort(row.begin(), row.end());
  }
  attach_f_ranges(r, 1);
  return r;
}

std::optional<std::vector<uint32_t>> reach_witness(
    const SubshiftAutomaton& a, std::span<const uint32_t> from,
    std::span<const uint32_t> to) {
  if (from.empty() || to.empty())
    throw std::invalid_argument("reach_witness: empty endpoint set");
  std::vector<char> target(a.size(), 0);
  for (uint32_t s : to) target.at(s) = 1;
  std::vector<uint32_t> roots(from.begin(), from.end());
  std::sort(roots.begin(), roots.end());
  std::vector<uint32_t> parent(a.size(), UINT32_MAX);
  std::deque<uint32_t> queue;
  uint32_t hit = UINT32_MAX;
  for (uint32_t s : roots) {
    if (parent.at(s) != UINT32_MAX) continue;
    parent[s] = s;
    if (target[s] && hit == UINT32_MAX) hit = s;
    queue.push_back(s);
  }
  while (hit == UINT32_MAX && !queue.empty()) {
    uint32_t v = queue.front();
    queue.pop_front();
    for (uint32_t tgt : a.successors(v)) {
      if (parent[tgt] != UINT32_MAX) continue;
      parent[tgt] = v;
      if (target[tgt]) {
        hit = tgt;
        break;
      }
      queue.push_back(tgt);
    }
  }
  if (hit == UINT32_MAX) return std::nullopt;
  std::vector<uint32_t> path;
  uint32_t v = hit;
  while (parent[v] != v) {
    path.push_back(v);
    v = parent[v];
  }
  path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace cfs
