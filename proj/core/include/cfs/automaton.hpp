#pragma once

#include "cfs/rational.hpp"
#include "cfs/word.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cfs {

// Subshift of finite type over {1..N}: states are symbol windows of length
// 2*window+1, edges are one-symbol left shifts, and every state carries a
// certified range of f = x + y over all sequences showing that window.
// States are kept sorted lexicographically; all outputs are canonical.
struct SubshiftAutomaton {
  int alphabet = 0;  // N
  int window = 0;    // half-width; word length is 2*window+1

  std::vector<uint8_t> symbols;    // flat state words, size() * word_len()
  std::vector<uint32_t> out_start; // CSR index, size()+1 entries
  std::vector<uint32_t> out_edges; // targets, sorted within each source
  std::vector<double> f_lo;        // outward-rounded certified f range
  std::vector<double> f_hi;

  size_t word_len() const { return 2 * static_cast<size_t>(window) + 1; }
  size_t size() const { return f_lo.size(); }
  size_t edge_count() const { return out_edges.size(); }
  bool empty() const { return size() == 0; }

  std::span<const uint8_t> state_word(size_t i) const {
    return {symbols.data() + i * word_len(), word_len()};
  }
  Word state_as_word(size_t i) const;
  std::span<const uint32_t> successors(size_t i) const {
    return {out_edges.data() + out_start[i], out_edges.data() + out_start[i + 1]};
  }
  // Binary search on the sorted state words.
  std::optional<uint32_t> find_state(std::span<const uint8_t> w) const;
  std::optional<uint32_t> find_state(const Word& w) const;

  friend bool operator==(const SubshiftAutomaton&, const SubshiftAutomaton&) = default;
};

struct BuildOptions {
  uint64_t state_budget = 5'000'000;
  int threads = 1;
};

SubshiftAutomaton build_full_shift(int alphabet, int window,
                                   const BuildOptions& opts = {});

// Full shift restricted to words over the given symbol set (the symbolic
// model of the Gauss-Cantor set K(B)).
SubshiftAutomaton alphabet_subshift(const std::vector<int>& alphabet, int window,
                                    const BuildOptions& opts = {});

enum class PruneMode { outer, inner };

// Keeps states whose certified f range stays on the right side of t (outer:
// range minimum <= t, a superset of the true sublevel symbols; inner: range
// maximum <= t, a subset), then repeatedly deletes states missing an
// incoming or outgoing edge. std::nullopt means "no prune" and returns the
// input unchanged apart from the same cleanup.
SubshiftAutomaton prune_sublevel(const SubshiftAutomaton& a,
                                 const std::optional<Rational>& t,
                                 PruneMode mode);

// Reverses every transition and every state word; f ranges recomputed.
SubshiftAutomaton transpose(const SubshiftAutomaton& a);

// Sub-automaton induced on a sorted subset of states (edges within the
// subset only); canonical order is preserved.
SubshiftAutomaton induced_subautomaton(const SubshiftAutomaton& a,
                                       std::span<const uint32_t> states);

// Shortest directed path (as state indices, endpoints included) from any
// state in `from` to any state in `to`; BFS in index order, so the result is
// canonical. Empty optional when unreachable.
std::optional<std::vector<uint32_t>> reach_witness(
    const SubshiftAutomaton& a, std::span<const uint32_t> from,
    std::span<const uint32_t> to);

}  // namespace cfs
