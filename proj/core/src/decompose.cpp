#include "cfs/decompose.hpp"

#include <algorithm>

namespace cfs {

int ComponentDecomposition::component_of(uint32_t s, size_t state_count) const {
  // Linear scan over components; callers that need many lookups should build
  // their own map.
  (void)state_count;
  for (size_t i = 0; i < subhorseshoes.size(); ++i) {
    const auto& c = subhorseshoes[i];
    if (std::binary_search(c.begin(), c.end(), s)) return static_cast<int>(i);
  }
  return -1;
}

namespace {

// Iterative Tarjan. SCC ids are assigned in discovery order and remapped at
// the end so components are listed by their smallest state index.
struct Tarjan {
  const SubshiftAutomaton& a;
  std::vector<uint32_t> index, lowlink;
  std::vector<char> on_stack;
  std::vector<uint32_t> stack;
  std::vector<int32_t> scc_id;
  uint32_t counter = 0;
  int32_t scc_count = 0;

  explicit Tarjan(const SubshiftAutomaton& aut)
      : a(aut),
        index(aut.size(), UINT32_MAX),
        lowlink(aut.size(), 0),
        on_stack(aut.size(), 0),
        scc_id(aut.size(), -1) {}

  void run() {
    struct Frame {
      uint32_t v;
      uint32_t edge;
    };
    std::vector<Frame> frames;
    for (uint32_t root = 0; root < a.size(); ++root) {
      if (index[root] != UINT32_MAX) continue;
      frames.push_back({root, 0});
      index[root] = lowlink[root] = counter++;
      stack.push_back(root);
      on_stack[root] = 1;
      while (!frames.empty()) {
        Frame& f = frames.back();
        auto succ = a.successors(f.v);
        if (f.edge < succ.size()) {
          uint32_t w = succ[f.edge++];
          if (index[w] == UINT32_MAX) {
            index[w] = lowlink[w] = counter++;
            stack.push_back(w);
            on_stack[w] = 1;
            frames.push_back({w, 0});
          } else if (on_stack[w]) {
            lowlink[f.v] = std::min(lowlink[f.v], index[w]);
          }
        } else {
          if (lowlink[f.v] == index[f.v]) {
            uint32_t w;
            do {
              w = stack.back();
              stack.pop_back();
              on_stack[w] = 0;
              scc_id[w] = scc_count;
            } while (w != f.v);
            ++scc_count;
          }
          uint32_t v = f.v;
          frames.pop_back();
          if (!frames.empty())
            lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        }
      }
    }
  }
};

}  // namespace

ComponentDecomposition scc_decompose(const SubshiftAutomaton& a) {
  ComponentDecomposition d;
  size_t n = a.size();
  if (n == 0) return d;

  Tarjan t(a);
  t.run();

  std::vector<std::vector<uint32_t>> members(t.scc_count);
  for (uint32_t v = 0; v < n; ++v) members[t.scc_id[v]].push_back(v);

  // An SCC is a subhorseshoe iff it carries a cycle: more than one state, or
  // a single state with a self-loop.
  std::vector<int32_t> horseshoe_of(t.scc_count, -1);
  std::vector<size_t> order(t.scc_count);
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return members[x].front() < members[y].front();
  });
  for (size_t rank : order) {
    auto& m = members[rank];
    std::sort(m.begin(), m.end());
    bool cyclic = m.size() > 1;
    if (!cyclic) {
      for (uint32_t tgt : a.successors(m.front()))
        if (tgt == m.front()) cyclic = true;
    }
    if (cyclic) {
      horseshoe_of[rank] = static_cast<int32_t>(d.subhorseshoes.size());
      d.subhorseshoes.push_back(m);
    }
  }

  // Condensation reachability between subhorseshoes, plus the connecting /
  // orphan split: a non-horseshoe state survives iff it is both reachable
  // from some subhorseshoe and reaches some subhorseshoe.
  size_t cn = t.scc_count;
  std::vector<std::vector<uint32_t>> cond_out(cn);
  for (uint32_t v = 0; v < n; ++v)
    for (uint32_t w : a.successors(v))
      if (t.scc_id[v] != t.scc_id[w])
        cond_out[t.scc_id[v]].push_back(t.scc_id[w]);
  for (auto& row : cond_out) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  size_t h = d.subhorseshoes.size();
  for (size_t i = 0; i < h; ++i) {
    // DFS over the condensation from subhorseshoe i.
    int32_t start = -1;
    for (int32_t c = 0; c < t.scc_count; ++c)
      if (horseshoe_of[c] == static_cast<int32_t>(i)) start = c;
    std::vector<char> seen(cn, 0);
    std::vector<uint32_t> dfs{static_cast<uint32_t>(start)};
    seen[start] = 1;
    while (!dfs.empty()) {
      uint32_t c = dfs.back();
      dfs.pop_back();
      for (uint32_t w : cond_out[c]) {
        if (seen[w]) continue;
        seen[w] = 1;
        dfs.push_back(w);
      }
    }
    for (int32_t c = 0; c < t.scc_count; ++c) {
      int32_t j = horseshoe_of[c];
      if (seen[c] && j >= 0 && j != static_cast<int32_t>(i))
        d.transient_pairs.emplace_back(static_cast<uint32_t>(i),
                                       static_cast<uint32_t>(j));
    }
  }
  std::sort(d.transient_pairs.begin(), d.transient_pairs.end());

  // Forward/backward sweep from all subhorseshoe states.
  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::vector<uint32_t> work;
  for (const auto& comp : d.subhorseshoes)
    for (uint32_t v : comp) {
      fwd[v] = 1;
      work.push_back(v);
    }
  while (!work.empty()) {
    uint32_t v = work.back();
    work.pop_back();
    for (uint32_t w : a.successors(v))
      if (!fwd[w]) {
        fwd[w] = 1;
        work.push_back(w);
      }
  }
  std::vector<uint32_t> in_start(n + 1, 0), in_edges(a.edge_count());
  for (uint32_t tgt : a.out_edges) ++in_start[tgt + 1];
  for (size_t i = 0; i < n; ++i) in_start[i + 1] += in_start[i];
  {
    std::vector<uint32_t> cursor(in_start.begin(), in_start.end() - 1);
    for (uint32_t v = 0; v < n; ++v)
      for (uint32_t w : a.successors(v)) in_edges[cursor[w]++] = v;
  }
  for (const auto& comp : d.subhorseshoes)
    for (uint32_t v : comp) {
      bwd[v] = 1;
      work.push_back(v);
    }
  while (!work.empty()) {
    uint32_t v = work.back();
    work.pop_back();
    for (uint32_t k = in_start[v]; k < in_start[v + 1]; ++k) {
      uint32_t w = in_edges[k];
      if (!bwd[w]) {
        bwd[w] = 1;
        work.push_back(w);
      }
    }
  }
  std::vector<char> in_horseshoe(n, 0);
  for (const auto& comp : d.subhorseshoes)
    for (uint32_t v : comp) in_horseshoe[v] = 1;
  for (uint32_t v = 0; v < n; ++v)
    if (!in_horseshoe[v] && !(fwd[v] && bwd[v])) d.orphan_states.push_back(v);
  return d;
}

bool is_single_cycle(const SubshiftAutomaton& a, std::span<const uint32_t> comp) {
  std::vector<uint32_t> sorted(comp.begin(), comp.end());
  std::sort(sorted.begin(), sorted.end());
  for (uint32_t v : sorted) {
    uint32_t internal = 0;
    for (uint32_t w : a.successors(v))
      if (std::binary_search(sorted.begin(), sorted.end(), w)) ++internal;
    if (internal != 1) return false;
  }
  return true;
}

}  // namespace cfs
