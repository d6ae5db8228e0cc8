#include "cfs/analysis.hpp"

#include "cfs/errors.hpp"
#include "cfs/fwindow.hpp"
#include "cfs/parallel.hpp"
#include "cfs/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cfs {

namespace {

std::string mode_tag(PruneMode m) { return m == PruneMode::outer ? "o" : "i"; }

// Deterministic pick of the maximal-dimension subhorseshoe. Dimension ties
// go to the component with the largest certified f lower bound (the stage
// inequalities need max f to keep climbing), then size, then word order.
size_t pick_component(const SubshiftAutomaton& a, const ComponentDecomposition& d,
                      const std::vector<DimensionEstimate>& dims) {
  auto f_peak = [&](const std::vector<uint32_t>& comp) {
    double peak = -HUGE_VAL;
    for (uint32_t s : comp) peak = std::max(peak, a.f_lo[s]);
    return peak;
  };
  size_t best = 0;
  double best_peak = f_peak(d.subhorseshoes[0]);
  for (size_t i = 1; i < d.subhorseshoes.size(); ++i) {
    const auto& ci = d.subhorseshoes[i];
    const auto& cb = d.subhorseshoes[best];
    if (dims[i].hi != dims[best].hi) {
      if (dims[i].hi > dims[best].hi) {
        best = i;
        best_peak = f_peak(ci);
      }
      continue;
    }
    if (dims[i].lo != dims[best].lo) {
      if (dims[i].lo > dims[best].lo) {
        best = i;
        best_peak = f_peak(ci);
      }
      continue;
    }
    double peak = f_peak(ci);
    if (peak != best_peak) {
      if (peak > best_peak) {
        best = i;
        best_peak = peak;
      }
      continue;
    }
    if (ci.size() != cb.size()) {
      if (ci.size() > cb.size()) {
        best = i;
        best_peak = peak;
      }
      continue;
    }
    if (a.state_as_word(ci.front()) < a.state_as_word(cb.front())) {
      best = i;
      best_peak = peak;
    }
  }
  return best;
}

std::vector<uint32_t> words_to_indices(const SubshiftAutomaton& a,
                                       const std::vector<Word>& words,
                                       const char* what) {
  std::vector<uint32_t> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    auto idx = a.find_state(w);
    if (!idx)
      throw std::logic_error(std::string(what) +
                             ": state vanished under a monotone prune: " + w.str());
    out.push_back(*idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> indices_to_words(const SubshiftAutomaton& a,
                                   std::span<const uint32_t> idx) {
  std::vector<Word> out;
  out.reserve(idx.size());
  for (uint32_t i : idx) out.push_back(a.state_as_word(i));
  return out;
}

// Appended symbols along a state path (one new symbol per step).
std::vector<int> path_symbols(const SubshiftAutomaton& a,
                              std::span<const uint32_t> path) {
  std::vector<int> out;
  size_t len = a.word_len();
  for (size_t k = 1; k < path.size(); ++k)
    out.push_back(a.state_word(path[k])[len - 1]);
  return out;
}

// Shortest cycle through v inside the sorted state set `inside`.
std::vector<uint32_t> shortest_cycle_through(const SubshiftAutomaton& a,
                                             uint32_t v,
                                             std::span<const uint32_t> inside) {
  auto member = [&](uint32_t s) {
    return std::binary_search(inside.begin(), inside.end(), s);
  };
  std::vector<uint32_t> parent(a.size(), UINT32_MAX);
  std::vector<uint32_t> queue;
  for (uint32_t s : a.successors(v)) {
    if (!member(s) || parent[s] != UINT32_MAX) continue;
    parent[s] = v;
    queue.push_back(s);
    if (s == v) break;
  }
  size_t head = 0;
  if (parent[v] == UINT32_MAX) {
    while (head < queue.size() && parent[v] == UINT32_MAX) {
      uint32_t u = queue[head++];
      for (uint32_t s : a.successors(u)) {
        if (!member(s) || parent[s] != UINT32_MAX) continue;
        parent[s] = u;
        if (s == v) break;
        queue.push_back(s);
      }
    }
  }
  if (parent[v] == UINT32_MAX)
    throw std::logic_error("no cycle through state inside component");
  std::vector<uint32_t> cycle{v};
  uint32_t at = v;
  do {
    at = parent[at];
    cycle.push_back(at);
  } while (at != v);
  std::reverse(cycle.begin(), cycle.end());  // v ... v
  return cycle;
}

}  // namespace

EpsVerdict classify_eps(const SubshiftAutomaton& outer, const Rational& t,
                        const Rational& eps, double d_lo, const Resolution& res) {
  EpsVerdict v;
  v.eps = eps;
  ComponentDecomposition d = scc_decompose(outer);
  v.components = d.subhorseshoes.size();
  v.all_cycles = true;
  for (const auto& c : d.subhorseshoes)
    if (!is_single_cycle(outer, c)) v.all_cycles = false;
  if (d.subhorseshoes.empty()) {
    v.all_cycles = true;
    return v;
  }

  Rational win_lo = t - eps / 4;
  Rational win_hi = t + eps / 4;
  size_t high = 0;
  bool all_miss = true, some_meet = false;
  for (const auto& comp : d.subhorseshoes) {
    DimensionEstimate dim =
        boxdim_estimate(outer, std::span<const uint32_t>(comp), res.r_max,
                        res.count_budget);
    if (dim.hi + 1e-12 < d_lo) continue;  // certifiably below the I(t,eps) cut
    ++high;
    QInterval max_f = max_f_over_component(outer, comp, res.refinement);
    // Certified miss: every Lagrange value of the component stays clear of
    // the window. Values are bounded above by max f and below by the least
    // certified f over the component's states.
    Rational comp_floor = [&] {
      double m = HUGE_VAL;
      for (uint32_t s : comp) m = std::min(m, outer.f_lo[s]);
      return Rational(m);
    }();
    bool miss = max_f.hi < win_lo || comp_floor > win_hi;
    // Certified meet: max f (always a Lagrange value of a subhorseshoe)
    // inside the open window, or a sampled periodic orbit value inside it.
    bool meet = win_lo < max_f.lo && max_f.hi < win_hi;
    if (!meet && !miss) {
      // Periodic-orbit sampling: cycles with minimal vertex `root`, bounded
      // both in evaluated cycles and in explored branches.
      Rational tol(1, BigInt(1000000000000));
      size_t enumerated = 0, explored = 0;
      const size_t kCycleCap = 20000, kExploreCap = 400000;
      auto in_comp = [&](uint32_t s) {
        return std::binary_search(comp.begin(), comp.end(), s);
      };
      auto capped = [&] { return enumerated >= kCycleCap || explored >= kExploreCap; };
      for (size_t vi = 0; vi < comp.size() && !meet && !capped(); ++vi) {
        uint32_t root = comp[vi];
        // DFS over states >= root within the component
        std::vector<std::pair<uint32_t, std::vector<int>>> dfs;
        dfs.push_back({root, {}});
        while (!dfs.empty() && !meet && !capped()) {
          auto [s, word] = std::move(dfs.back());
          dfs.pop_back();
          for (uint32_t nxt : outer.successors(s)) {
            if (!in_comp(nxt) || nxt < root) continue;
            ++explored;
            std::vector<int> w2 = word;
            w2.push_back(outer.state_word(nxt)[outer.word_len() - 1]);
            if (nxt == root) {
              ++enumerated;
              SpectrumPoint p = markov_value({{}, Word{w2}}, tol);
              if (win_lo < p.enclosure.lo && p.enclosure.hi < win_hi) meet = true;
              continue;
            }
            if (w2.size() < static_cast<size_t>(res.cycle_len))
              dfs.push_back({nxt, std::move(w2)});
          }
        }
      }
    }
    if (meet) some_meet = true;
    if (!miss) all_miss = false;
  }
  v.high_dim_components = high;
  v.all_high_miss = high > 0 && all_miss;
  v.some_high_meet = some_meet;
  return v;
}

ShiftLab::ShiftLab(int alphabet, Resolution res) : alphabet_(alphabet), res_(res) {
  if (alphabet < 1) throw std::invalid_argument("alphabet bound must be >= 1");
  if (res_.window < 1) throw std::invalid_argument("window must be >= 1");
}

const SubshiftAutomaton& ShiftLab::full_shift() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::string key = "full|" + std::to_string(res_.window);
  auto it = automata_.find(key);
  if (it != automata_.end()) return *it->second;
  BuildOptions opts{res_.state_budget, res_.threads};
  auto a = std::make_shared<SubshiftAutomaton>(
      build_full_shift(alphabet_, res_.window, opts));
  automata_[key] = a;
  return *a;
}

const SubshiftAutomaton& ShiftLab::pruned(const Rational& t, PruneMode mode) const {
  const SubshiftAutomaton& full = full_shift();
  std::lock_guard<std::mutex> lock(mu_);
  std::string key = to_string(t) + "|" + mode_tag(mode) + "|" +
                    std::to_string(res_.window);
  auto it = automata_.find(key);
  if (it != automata_.end()) return *it->second;
  auto a = std::make_shared<SubshiftAutomaton>(prune_sublevel(full, t, mode));
  automata_[key] = a;
  return *a;
}

ShiftLab::DimPair ShiftLab::dims_at(const Rational& t) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = dims_.find(to_string(t));
    if (it != dims_.end()) return it->second;
  }
  const SubshiftAutomaton& outer = pruned(t, PruneMode::outer);
  const SubshiftAutomaton& inner = pruned(t, PruneMode::inner);
  double hi = 0.0, lo = 0.0;
  {
    ComponentDecomposition d = scc_decompose(outer);
    for (const auto& c : d.subhorseshoes) {
      auto est = boxdim_estimate(outer, std::span<const uint32_t>(c), res_.r_max,
                                 res_.count_budget);
      hi = std::max(hi, est.hi);
    }
  }
  {
    ComponentDecomposition d = scc_decompose(inner);
    for (const auto& c : d.subhorseshoes) {
      auto est = boxdim_estimate(inner, std::span<const uint32_t>(c), res_.r_max,
                                 res_.count_budget);
      lo = std::max(lo, est.lo);
    }
  }
  DimPair p{std::min(lo, hi), hi};
  std::lock_guard<std::mutex> lock(mu_);
  dims_[to_string(t)] = p;
  return p;
}

DCurvePoint ShiftLab::D_of_t(const Rational& t) const {
  DimPair p = dims_at(t);
  return {t, p.d_lo, p.d_hi, res_.window, res_.r_max};
}

std::vector<DCurvePoint> ShiftLab::d_curve(const std::vector<Rational>& grid) const {
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] <= grid[i]))
      throw std::invalid_argument("d_curve grid must be sorted");
  std::vector<DCurvePoint> out(grid.size());
  parallel_chunks(grid.size(), res_.threads, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) out[i] = D_of_t(grid[i]);
  });
  return out;
}

double ShiftLab::pressure_at(const Rational& t, PruneMode mode, int window) const {
  std::string key = to_string(t) + "|" + mode_tag(mode) + "|p" +
                    std::to_string(window);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pressures_.find(key);
    if (it != pressures_.end()) return it->second;
  }
  SubshiftAutomaton a;
  {
    BuildOptions opts{res_.state_budget, res_.threads};
    a = prune_sublevel(build_full_shift(alphabet_, window, opts), t, mode);
  }
  ComponentDecomposition d = scc_decompose(a);
  double best = 0.0;
  for (const auto& c : d.subhorseshoes) {
    auto est = pressure_dim(cylinder_weight_automaton(a, c), res_.pressure_tol);
    best = std::max(best, est.mid());
  }
  std::lock_guard<std::mutex> lock(mu_);
  pressures_[key] = best;
  return best;
}

ShiftLab::TwoDBracket ShiftLab::two_d_bracket(const Rational& t) const {
  TwoDBracket b;
  DimPair box = dims_at(t);
  b.box_lo = 2 * box.d_lo;
  b.box_hi = 2 * box.d_hi;
  int w = res_.window;
  int w_prev = std::max(1, w - 1);
  double p_out = pressure_at(t, PruneMode::outer, w);
  double p_in = pressure_at(t, PruneMode::inner, w);
  double delta = 0.0;
  if (w_prev != w) {
    double p_out_prev = pressure_at(t, PruneMode::outer, w_prev);
    double p_in_prev = pressure_at(t, PruneMode::inner, w_prev);
    delta = std::max(std::fabs(p_out - p_out_prev), std::fabs(p_in - p_in_prev));
  }
  b.window_delta = delta;
  b.press_lo = 2 * (p_in - 2 * delta);
  b.press_hi = 2 * (p_out + 2 * delta);
  b.lo = std::max(b.box_lo, b.press_lo);
  b.hi = std::min(b.box_hi, b.press_hi);
  return b;
}

ShiftLab::EtaMinus ShiftLab::eta_minus(double eta, const Rational& tol_t) const {
  if (tol_t <= 0) throw std::invalid_argument("tol_t must be positive");
  EtaMinus r;
  if (eta <= 0.0) {
    r.t_lo = r.t_hi = Rational(3);
    r.degenerate = true;
    return r;
  }
  Rational a(2);
  Rational b(alphabet_ + 2);
  double da = dims_at(a).d_hi;
  double db = dims_at(b).d_hi;
  if (!(da < eta))
    throw std::invalid_argument("eta already reached at the lower bisection end");
  if (!(eta <= db))
    throw std::invalid_argument("eta above the achievable dimension range");
  while (b - a > tol_t) {
    Rational mid = a + (b - a) / 2;
    if (dims_at(mid).d_hi < eta)
      a = mid;
    else
      b = mid;
  }
  r.t_lo = a;
  r.t_hi = b;
  r.d_hi_left = dims_at(a).d_hi;
  r.d_hi_right = dims_at(b).d_hi;
  r.indeterminate = dims_at(b).d_lo < eta;
  return r;
}

ShiftLab::Connect ShiftLab::connect_check(const std::vector<Word>& comp1,
                                          const std::vector<Word>& comp2,
                                          const Rational& t,
                                          const Rational& eps) const {
  if (comp1.empty() || comp2.empty())
    throw std::invalid_argument("connect_check: empty component");
  if (eps < 0) throw std::invalid_argument("connect_check: negative eps");
  const SubshiftAutomaton& a = pruned(t + eps, PruneMode::outer);
  auto idx1 = words_to_indices(a, comp1, "connect_check comp1");
  auto idx2 = words_to_indices(a, comp2, "connect_check comp2");

  ComponentDecomposition d = scc_decompose(a);
  std::vector<int32_t> scc_of(a.size(), -1);
  for (size_t i = 0; i < d.subhorseshoes.size(); ++i)
    for (uint32_t s : d.subhorseshoes[i]) scc_of[s] = static_cast<int32_t>(i);
  auto scc_id = [&](const std::vector<uint32_t>& idx, const char* what) {
    int32_t id = scc_of[idx.front()];
    for (uint32_t s : idx)
      if (scc_of[s] != id)
        throw std::logic_error(std::string(what) + ": component split across SCCs");
    if (id < 0) throw std::logic_error(std::string(what) + ": component lost its cycle");
    return id;
  };
  int32_t id1 = scc_id(idx1, "connect_check comp1");
  int32_t id2 = scc_id(idx2, "connect_check comp2");

  Connect c;
  c.connected = (id1 == id2);
  if (auto p = reach_witness(a, idx1, idx2)) c.path_fwd = indices_to_words(a, *p);
  if (auto p = reach_witness(a, idx2, idx1)) c.path_back = indices_to_words(a, *p);
  if (c.connected)
    c.enclosing_scc = indices_to_words(a, d.subhorseshoes[id1]);
  return c;
}

ShiftLab::Family ShiftLab::increasing_family(double eta, const Rational& eps,
                                             int n_max,
                                             const Rational& shrink) const {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  if (!(shrink > 0 && shrink < 1))
    throw std::invalid_argument("shrink must lie in (0,1)");
  Family fam;
  Rational tol_t = eps / 8;
  if (tol_t > Rational(1, 16)) tol_t = Rational(1, 16);
  EtaMinus em = eta_minus(eta, tol_t);
  fam.eta_t_lo = em.t_lo;
  fam.eta_t_hi = em.t_hi;
  if (em.degenerate) {
    fam.diagnostic = "eta_minus degenerate (eta <= 0)";
    return fam;
  }
  Rational ta = em.t_lo;
  Rational t_n = ta - eps;
  bool ok = true;
  for (int n = 0; n < n_max; ++n) {
    Rational t_next = ta - (ta - t_n) * shrink;
    // Stage components come from the inner prune: that certifies the stage
    // sits inside the true sublevel set, so max f < t_{n+1} can actually be
    // verified. Connection checks still run in the outer prune.
    const SubshiftAutomaton& a = pruned(t_next, PruneMode::inner);
    ComponentDecomposition d = scc_decompose(a);
    if (d.subhorseshoes.empty()) {
      fam.diagnostic = "no subhorseshoe in the inner prune at t=" + to_string(t_next);
      ok = false;
      break;
    }
    std::vector<DimensionEstimate> dims;
    dims.reserve(d.subhorseshoes.size());
    for (const auto& c : d.subhorseshoes)
      dims.push_back(boxdim_estimate(a, std::span<const uint32_t>(c), res_.r_max,
                                     res_.count_budget));
    size_t pick = pick_component(a, d, dims);
    const auto& comp = d.subhorseshoes[pick];

    FamilyStage stage;
    stage.t = t_n;
    stage.t_next = t_next;
    stage.component = indices_to_words(a, comp);
    stage.dim = dims[pick];
    stage.max_f = max_f_over_component(a, comp, res_.refinement);

    if (!(stage.max_f.hi > t_n)) {
      fam.diagnostic = "stage max f cannot exceed t_n at this resolution (t_n=" +
                       to_string(t_n) + ")";
      ok = false;
      fam.stages.push_back(std::move(stage));
      break;
    }
    if (!(stage.max_f.lo < t_next)) {
      fam.diagnostic = "stage max f not certified below t_{n+1}=" + to_string(t_next);
      ok = false;
      fam.stages.push_back(std::move(stage));
      break;
    }
    if (!fam.stages.empty()) {
      Connect c = connect_check(fam.stages.back().component, stage.component,
                                t_next, Rational(0));
      stage.connects_to_previous = c.connected;
      if (!c.connected) {
        fam.diagnostic = "consecutive stages do not connect at t=" + to_string(t_next);
        ok = false;
        fam.stages.push_back(std::move(stage));
        break;
      }
    }
    fam.stages.push_back(std::move(stage));
    t_n = t_next;
  }
  fam.complete = ok && static_cast<int>(fam.stages.size()) == n_max;
  if (fam.complete && fam.diagnostic.empty()) fam.diagnostic = "ok";
  return fam;
}

ShiftLab::Theta ShiftLab::theta_generate(const std::vector<Word>& base,
                                         const Family& family, int stages,
                                         const std::vector<int>& gaps) const {
  if (family.stages.empty()) throw std::invalid_argument("empty family");
  if (stages < 1) throw std::invalid_argument("stages must be >= 1");
  if (gaps.empty()) throw std::invalid_argument("empty gap schedule");
  for (size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i] <= gaps[i - 1])
      throw std::invalid_argument("gap schedule must be strictly increasing");

  const SubshiftAutomaton& a = pruned(family.stages.back().t_next, PruneMode::outer);
  auto base_idx = words_to_indices(a, base, "theta base");
  auto gap_at = [&](int k) {
    return gaps[std::min<size_t>(k, gaps.size() - 1)];
  };

  // Base cycle.
  std::vector<uint32_t> base_cycle = shortest_cycle_through(a, base_idx.front(),
                                                            base_idx);
  std::vector<int> base_syms = path_symbols(a, base_cycle);

  // Near-maximizer cycle per stage: through the state with the largest
  // certified f lower bound inside the stage component.
  struct Spike {
    std::vector<uint32_t> cycle;
    std::vector<int> syms;
    uint32_t anchor;
  };
  std::vector<Spike> spikes;
  for (const auto& st : family.stages) {
    auto idx = words_to_indices(a, st.component, "theta stage component");
    uint32_t best = idx.front();
    for (uint32_t s : idx)
      if (a.f_lo[s] > a.f_lo[best]) best = s;
    Spike sp;
    sp.anchor = best;
    sp.cycle = shortest_cycle_through(a, best, idx);
    sp.syms = path_symbols(a, sp.cycle);
    spikes.push_back(std::move(sp));
  }

  // Assemble the walk: A_0 h_1 A_1 h_2 ... h_K A_K with connector paths
  // found inside the final-stage automaton.
  std::vector<int> word(a.state_word(base_cycle.front()).begin(),
                        a.state_word(base_cycle.front()).end());
  uint32_t at = base_cycle.front();
  size_t spike_begin = 0, spike_end = 0;

  auto walk_cycle = [&](const std::vector<uint32_t>& cycle,
                        const std::vector<int>& syms, int steps) {
    for (int k = 0; k < steps; ++k) {
      word.push_back(syms[k % syms.size()]);
      at = cycle[k % syms.size() + 1];
    }
  };
  auto connect_to = [&](uint32_t target) {
    if (at == target) return;
    std::vector<uint32_t> from{at}, to{target};
    auto p = reach_witness(a, from, to);
    if (!p)
      throw std::runtime_error("theta connectors not found: family not connected");
    auto syms = path_symbols(a, *p);
    word.insert(word.end(), syms.begin(), syms.end());
    at = target;
  };

  walk_cycle(base_cycle, base_syms, gap_at(0));
  for (int k = 1; k <= stages; ++k) {
    const Spike& sp = spikes[std::min<size_t>(k, spikes.size() - 1)];
    connect_to(sp.anchor);
    int r = gap_at(k);
    size_t begin_pos = word.size();
    walk_cycle(sp.cycle, sp.syms, 2 * r + 1);
    if (k == stages) {
      spike_begin = begin_pos;
      spike_end = word.size();
    }
    connect_to(base_cycle.front());
    walk_cycle(base_cycle, base_syms, gap_at(k));
  }

  Theta theta;
  theta.word = Word{word};
  theta.final_max_f = family.stages.back().max_f;
  // The running Lagrange estimate reads the final spike through windows of
  // the lab's half-width: interior spike positions then see pure orbit
  // windows, independent of the surrounding gap schedule.
  size_t h = static_cast<size_t>(res_.window);
  size_t margin = std::min(h, (spike_end - spike_begin - 1) / 2);
  bool any = false;
  for (size_t i = spike_begin + margin; i < spike_end - margin; ++i) {
    size_t from = i >= h ? i - h : 0;
    size_t to = std::min(word.size(), i + h + 1);
    Word sub{std::vector<int>(word.begin() + from, word.begin() + to)};
    QInterval r = f_window_range(sub, i - from, alphabet_);
    Rational width = r.width();
    if (width > theta.window_err) theta.window_err = width;
    if (!any) {
      theta.lagrange_estimate = r;
      any = true;
    } else {
      if (r.lo > theta.lagrange_estimate.lo) theta.lagrange_estimate.lo = r.lo;
      if (r.hi > theta.lagrange_estimate.hi) theta.lagrange_estimate.hi = r.hi;
    }
  }
  return theta;
}

ShiftLab::Classification ShiftLab::classify_point(
    const Rational& t, const std::vector<Rational>& eps_grid) const {
  if (eps_grid.empty()) throw std::invalid_argument("empty eps grid");
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    if (eps_grid[i] <= 0) throw std::invalid_argument("eps must be positive");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw std::invalid_argument("eps grid must be strictly decreasing");
  }
  Classification out;
  DimPair dims = dims_at(t);
  out.d_lo = dims.d_lo;
  out.d_hi = dims.d_hi;
  for (const Rational& eps : eps_grid) {
    const SubshiftAutomaton& a = pruned(t + eps / 4, PruneMode::outer);
    out.per_eps.push_back(classify_eps(a, t, eps, dims.d_lo, res_));
  }
  bool d_zero = out.per_eps.back().all_cycles;
  bool jtilde = false, j_all = true;
  for (const auto& v : out.per_eps) {
    if (v.high_dim_components > 0 && v.all_high_miss) jtilde = true;
    if (!v.some_high_meet) j_all = false;
  }
  if (d_zero)
    out.label = PointClass::d_zero;
  else if (jtilde)
    out.label = PointClass::jtilde_like;
  else if (j_all)
    out.label = PointClass::j_like;
  else
    out.label = PointClass::indeterminate;

  if (out.label == PointClass::j_like) {
    // Left gap at grid resolution: structure below t collapses to cycles.
    Rational left = t - eps_grid.back() / 4;
    const SubshiftAutomaton& la = pruned(left, PruneMode::outer);
    ComponentDecomposition ld = scc_decompose(la);
    bool cycles = true;
    for (const auto& c : ld.subhorseshoes)
      if (!is_single_cycle(la, c)) cycles = false;
    if (cycles) {
      out.left_gap_certified = true;
      out.label = PointClass::f_like;
    }
  }
  return out;
}

}  // namespace cfs
