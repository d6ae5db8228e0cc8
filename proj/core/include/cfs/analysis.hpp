#pragma once

#include "cfs/automaton.hpp"
#include "cfs/decompose.hpp"
#include "cfs/dimension.hpp"
#include "cfs/spectra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace cfs {

struct Resolution {
  int window = 3;
  int r_max = 25;
  uint64_t state_budget = 5'000'000;
  uint64_t count_budget = uint64_t{1} << 33;
  int threads = 1;
  double pressure_tol = 1e-6;
  int refinement = 2;     // extra symbols per side for max-f windows
  int cycle_len = 12;     // classifier periodic-orbit sampling bound
};

struct DCurvePoint {
  Rational t;
  double d_lo = 0.0;
  double d_hi = 0.0;
  int window = 0;
  int r_max = 0;
};

enum class PointClass { j_like, f_like, jtilde_like, d_zero, indeterminate };

// Per-epsilon classifier verdict over one outer-pruned automaton.
struct EpsVerdict {
  Rational eps;
  size_t components = 0;
  size_t high_dim_components = 0;  // dim bracket may reach d_lo(t)
  bool all_cycles = false;         // certifies D = 0 through this level
  bool all_high_miss = false;      // every candidate certifiably misses the window
  bool some_high_meet = false;     // some candidate certifiably meets the window
};

EpsVerdict classify_eps(const SubshiftAutomaton& outer, const Rational& t,
                        const Rational& eps, double d_lo, const Resolution& res);

// Shared context: one alphabet bound, one resolution, memoized pruned
// automata and dimension data. All public operations are deterministic.
class ShiftLab {
 public:
  ShiftLab(int alphabet, Resolution res);

  int alphabet() const { return alphabet_; }
  const Resolution& resolution() const { return res_; }

  const SubshiftAutomaton& full_shift() const;
  const SubshiftAutomaton& pruned(const Rational& t, PruneMode mode) const;

  // dHi = largest boxdim hi over subhorseshoes of the outer prune (exactly
  // monotone in t); dLo = largest boxdim lo over subhorseshoes of the inner
  // prune, clamped to dHi.
  DCurvePoint D_of_t(const Rational& t) const;
  std::vector<DCurvePoint> d_curve(const std::vector<Rational>& grid) const;

  // Cross-method bracket for 2*D(t): boxdim interval intersected with the
  // inner/outer pressure interval widened by the measured window-convergence
  // delta per side.
  struct TwoDBracket {
    double lo = 0.0, hi = 0.0;           // bracket for 2*D(t)
    double box_lo = 0.0, box_hi = 0.0;   // 2 * boxdim parts
    double press_lo = 0.0, press_hi = 0.0;
    double window_delta = 0.0;
  };
  TwoDBracket two_d_bracket(const Rational& t) const;

  struct EtaMinus {
    Rational t_lo{0}, t_hi{0};
    double d_hi_left = 0.0, d_hi_right = 0.0;
    bool degenerate = false;
    bool indeterminate = false;  // inner estimate cannot confirm eta at t_hi
  };
  EtaMinus eta_minus(double eta, const Rational& tol_t) const;

  struct Connect {
    bool connected = false;
    std::vector<Word> path_fwd;   // state words, comp1 -> comp2
    std::vector<Word> path_back;  // comp2 -> comp1
    std::vector<Word> enclosing_scc;
  };
  Connect connect_check(const std::vector<Word>& comp1,
                        const std::vector<Word>& comp2, const Rational& t,
                        const Rational& eps) const;

  struct FamilyStage {
    Rational t;                    // t_n of this stage
    Rational t_next;               // t_{n+1}; max f must sit in (t, t_next)
    std::vector<Word> component;   // subhorseshoe of the outer prune at t_next
    DimensionEstimate dim;
    QInterval max_f;
    bool connects_to_previous = false;
  };
  struct Family {
    std::vector<FamilyStage> stages;
    Rational eta_t_lo{0}, eta_t_hi{0};  // eta_minus bracket used for the ladder
    bool complete = false;
    std::string diagnostic;
  };
  // Ladder t_{n+1} = ta - (ta - t_n) * shrink toward the eta_minus estimate
  // ta, t_0 = ta - eps; each stage takes the maximal-dimension subhorseshoe
  // of the outer prune at t_{n+1} and verifies the interleaving inequalities
  // with certified intervals.
  Family increasing_family(double eta, const Rational& eps, int n_max,
                           const Rational& shrink = Rational(1, 2)) const;

  struct Theta {
    Word word;
    QInterval lagrange_estimate;  // over the final spike's windows
    Rational window_err{0};       // widest f-window used for the estimate
    QInterval final_max_f;        // the last stage's certified max f
  };
  Theta theta_generate(const std::vector<Word>& base, const Family& family,
                       int stages, const std::vector<int>& gaps) const;

  struct Classification {
    PointClass label = PointClass::indeterminate;
    bool left_gap_certified = false;
    double d_lo = 0.0, d_hi = 0.0;
    std::vector<EpsVerdict> per_eps;
  };
  Classification classify_point(const Rational& t,
                                const std::vector<Rational>& eps_grid) const;

 private:
  struct DimPair {
    double d_lo, d_hi;
  };
  DimPair dims_at(const Rational& t) const;
  double pressure_at(const Rational& t, PruneMode mode, int window) const;

  int alphabet_;
  Resolution res_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const SubshiftAutomaton>> automata_;
  mutable std::map<std::string, DimPair> dims_;
  mutable std::map<std::string, double> pressures_;
};

}  // namespace cfs
