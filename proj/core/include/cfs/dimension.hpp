#pragma once

#include "cfs/automaton.hpp"
#include "cfs/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cfs {

enum class DimMethod { boxcount, pressure };

struct DimensionEstimate {
  double lo = 0.0;
  double hi = 0.0;
  DimMethod method = DimMethod::boxcount;
  // boxcount diagnostics: (r, |C_u(X,r)|) rows
  std::vector<std::pair<int, uint64_t>> count_table;
  // pressure diagnostics: (s, rho(s)) bisection trace
  std::vector<std::pair<double, double>> bisection_trace;

  double mid() const { return lo + (hi - lo) / 2; }
};

// |C_u(X, r)|: minimal admissible words whose cylinder first reaches
// |I| <= e^{-r}, counted by depth-first extension with exact integer
// threshold tests (q(q+q') >= ceil(e^r)). The free-alphabet overload covers
// the Gauss-Cantor set K(B); the automaton overloads cover subshifts and
// their components.
uint64_t covering_count(const std::vector<int>& alphabet, int r, uint64_t budget);
uint64_t covering_count(const SubshiftAutomaton& a, int r, uint64_t budget);
uint64_t covering_count(const SubshiftAutomaton& a, std::span<const uint32_t> comp,
                        int r, uint64_t budget);

// Tail-slope reduction of the covering counts over r in [r_max/2, r_max]:
// hi is the largest log|C(r)|/r (monotone under automaton inclusion), lo the
// smallest successive difference log|C(r)| - log|C(r-1)|, clamped to [0,hi].
DimensionEstimate boxdim_estimate(const std::vector<int>& alphabet, int r_max,
                                  uint64_t budget);
DimensionEstimate boxdim_estimate(const SubshiftAutomaton& a, int r_max,
                                  uint64_t budget);
DimensionEstimate boxdim_estimate(const SubshiftAutomaton& a,
                                  std::span<const uint32_t> comp, int r_max,
                                  uint64_t budget);

// Sparse nonnegative multigraph with per-transition weights.
struct WeightedAutomaton {
  struct Edge {
    uint32_t from;
    uint32_t to;
    double weight;  // strictly positive, < 1 for contracting systems
  };
  size_t states = 0;
  std::vector<Edge> edges;
};

// Transition weights |I(word(u) b)| / |I(word(u))| for each edge u -> v of
// the component, b the appended symbol of v.
WeightedAutomaton cylinder_weight_automaton(const SubshiftAutomaton& a,
                                            std::span<const uint32_t> comp);

// Root s* of rho(M(s)) = 1 with M(s)_{uv} = sum of weight^s over parallel
// edges, found by bisection over [0,1] with power iteration for the spectral
// radius. Requires a strongly connected input; pure simple cycles short-cut
// to exactly zero.
DimensionEstimate pressure_dim(const WeightedAutomaton& w, double tol);

struct ComponentDecomposition;  // decompose.hpp

// Planar dimension of a finite-type set: max of 2*du_i over subhorseshoes
// and ds_i + du_j over transient pairs (i, j) (path from i to j).
DimensionEstimate dim_finite_type(const ComponentDecomposition& d,
                                  const std::vector<DimensionEstimate>& unstable,
                                  const std::vector<DimensionEstimate>& stable);

// Box-counts the Minkowski sum K(B1) + K(B2) through depth-`depth` cylinder
// interval sums at the scale of the largest summand.
DimensionEstimate sumset_boxdim(const std::vector<int>& b1,
                                const std::vector<int>& b2, int depth,
                                uint64_t pair_budget = uint64_t{1} << 26);

}  // namespace cfs
