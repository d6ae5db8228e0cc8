#pragma once

#include "cfs/automaton.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cfs {

// Partition of a pruned automaton into subhorseshoes (strongly connected
// components carrying at least one cycle), transient pairs (ordered pairs of
// subhorseshoes joined by a directed path), and orphan states on neither a
// cycle nor a connecting path.
struct ComponentDecomposition {
  std::vector<std::vector<uint32_t>> subhorseshoes;  // each sorted ascending
  std::vector<std::pair<uint32_t, uint32_t>> transient_pairs;  // (i, j): path i -> j
  std::vector<uint32_t> orphan_states;

  // Index of the subhorseshoe containing state s, or -1.
  int component_of(uint32_t s, size_t state_count) const;
};

ComponentDecomposition scc_decompose(const SubshiftAutomaton& a);

// True when the component is one simple cycle (every state has exactly one
// in-component successor).
bool is_single_cycle(const SubshiftAutomaton& a, std::span<const uint32_t> comp);

}  // namespace cfs
