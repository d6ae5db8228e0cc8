#include "cfs/analysis.hpp"

#include "cfs/quadratic.hpp"

#include <doctest.h>

#include <cmath>

using namespace cfs;

namespace {

Resolution small_res() {
  Resolution res;
  res.window = 3;
  res.r_max = 20;
  res.threads = 2;
  return res;
}

}  // namespace

TEST_CASE("D_of_t below three is flat zero") {
  ShiftLab lab(2, small_res());
  auto p = lab.D_of_t(parse_rational("2.5"));
  CHECK(p.d_hi <= 0.05);
  CHECK(p.d_lo == 0.0);
  auto p29 = lab.D_of_t(parse_rational("2.9"));
  CHECK(p29.d_hi <= 0.05);
  // below min f the prune is empty and the bracket collapses to zero
  auto p20 = lab.D_of_t(parse_rational("2.0"));
  CHECK(p20.d_lo == 0.0);
  CHECK(p20.d_hi == 0.0);
  CHECK(lab.pruned(parse_rational("2.0"), PruneMode::outer).empty());
}

TEST_CASE("D_of_t at the top captures the full shift") {
  ShiftLab lab(2, small_res());
  // sqrt 12 is max f over the N=2 shift; above it nothing is pruned
  auto top = lab.D_of_t(parse_rational("4"));
  const auto& full = lab.full_shift();
  const auto& pruned = lab.pruned(parse_rational("4"), PruneMode::outer);
  CHECK(full.size() == pruned.size());
  CHECK(top.d_hi > 0.5);  // C2 dimension ~ 0.53 plus tail-slope bias
  CHECK(top.d_lo <= top.d_hi);
}

TEST_CASE("d_curve dHi is nondecreasing") {
  ShiftLab lab(2, small_res());
  std::vector<Rational> grid;
  for (int k = 0; k <= 14; ++k) grid.push_back(Rational(28, 10) + Rational(k, 20));
  auto pts = lab.d_curve(grid);
  for (size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].d_hi >= pts[i - 1].d_hi);
    CHECK(pts[i].d_lo <= pts[i].d_hi);
  }
  CHECK_THROWS_AS(lab.d_curve({Rational(3), Rational(2)}), std::invalid_argument);
}

TEST_CASE("d_curve is independent of thread count") {
  std::vector<Rational> grid;
  for (int k = 0; k <= 6; ++k) grid.push_back(Rational(29, 10) + Rational(k, 10));
  Resolution r1 = small_res();
  r1.threads = 1;
  Resolution r8 = small_res();
  r8.threads = 8;
  auto p1 = ShiftLab(2, r1).d_curve(grid);
  auto p8 = ShiftLab(2, r8).d_curve(grid);
  REQUIRE(p1.size() == p8.size());
  for (size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].d_lo == p8[i].d_lo);
    CHECK(p1[i].d_hi == p8[i].d_hi);
  }
}

TEST_CASE("eta_minus bisection postconditions") {
  ShiftLab lab(2, small_res());
  Rational tol(1, 64);
  auto em = lab.eta_minus(0.3, tol);
  CHECK(em.t_hi - em.t_lo <= tol);
  CHECK(em.d_hi_left < 0.3);
  CHECK(em.d_hi_right >= 0.3);
  CHECK(!em.degenerate);
  // re-evaluate through the public interface: exact reproduction
  CHECK(lab.D_of_t(em.t_lo).d_hi == em.d_hi_left);
  CHECK(lab.D_of_t(em.t_hi).d_hi == em.d_hi_right);

  // nondecreasing in eta
  auto em2 = lab.eta_minus(0.45, tol);
  CHECK(em2.t_lo >= em.t_lo);
  CHECK(em2.t_hi >= em.t_hi);

  // degenerate and out-of-range edges
  auto zero = lab.eta_minus(0.0, tol);
  CHECK(zero.degenerate);
  CHECK(zero.t_hi <= Rational(3));
  CHECK_THROWS_AS(lab.eta_minus(0.99, tol), std::invalid_argument);
  CHECK_THROWS_AS(lab.eta_minus(0.3, Rational(0)), std::invalid_argument);
}

TEST_CASE("connect_check symmetry, reflexivity and monotonicity") {
  ShiftLab lab(2, small_res());
  Rational t29(29, 10), eps(1, 10);
  const auto& a = lab.pruned(t29, PruneMode::outer);
  auto d = scc_decompose(a);
  REQUIRE(d.subhorseshoes.size() == 2);
  std::vector<Word> ones, twos;
  for (uint32_t s : d.subhorseshoes[0]) ones.push_back(a.state_as_word(s));
  for (uint32_t s : d.subhorseshoes[1]) twos.push_back(a.state_as_word(s));

  // identical components connect trivially
  auto self = lab.connect_check(ones, ones, t29, eps);
  CHECK(self.connected);

  // 1-bar vs 2-bar: separate at 2.9+0.1, joined at 3.2, still joined at 3.9
  auto low = lab.connect_check(ones, twos, t29, Rational(1, 20));
  CHECK(!low.connected);
  CHECK(low.path_fwd.empty());
  auto mid = lab.connect_check(ones, twos, parse_rational("3.2"), Rational(0));
  CHECK(mid.connected);
  CHECK(!mid.path_fwd.empty());
  CHECK(!mid.path_back.empty());
  CHECK(mid.enclosing_scc.size() >= 2);
  auto high = lab.connect_check(ones, twos, parse_rational("3.9"), Rational(0));
  CHECK(high.connected);

  // symmetry of the verdict
  auto mid_rev = lab.connect_check(twos, ones, parse_rational("3.2"), Rational(0));
  CHECK(mid_rev.connected == mid.connected);
}

TEST_CASE("connect_check transitivity at a fixed level") {
  // three singleton orbits inside N=3: 1-bar, 2-bar, 3-bar all connect at 4.2
  Resolution res = small_res();
  ShiftLab lab(3, res);
  std::vector<std::vector<Word>> comps;
  for (int b : {1, 2, 3})
    comps.push_back({Word{std::vector<int>(7, b)}});
  Rational t(42, 10), eps(0);
  bool c01 = lab.connect_check(comps[0], comps[1], t, eps).connected;
  bool c12 = lab.connect_check(comps[1], comps[2], t, eps).connected;
  bool c02 = lab.connect_check(comps[0], comps[2], t, eps).connected;
  CHECK(c01);
  CHECK(c12);
  CHECK(c02);  // transitivity holds with room: all in one SCC
}

TEST_CASE("increasing family: degenerate single-stage flag") {
  Resolution res = small_res();
  res.window = 4;
  ShiftLab lab(2, res);
  auto fam = lab.increasing_family(0.05, Rational(1), 3, Rational(1, 2));
  CHECK(!fam.complete);
  CHECK(fam.diagnostic != "ok");
  CHECK(fam.stages.size() < 3);
}

TEST_CASE("increasing family: two genuine stages at N=2") {
  Resolution res = small_res();
  res.window = 4;
  ShiftLab lab(2, res);
  auto fam = lab.increasing_family(0.5, parse_rational("0.45"), 2, Rational(1, 2));
  REQUIRE(fam.complete);
  REQUIRE(fam.stages.size() == 2);
  CHECK(fam.stages[0].component.size() == 1);  // the 2-bar orbit
  CHECK(fam.stages[0].dim.hi < fam.stages[1].dim.lo);  // strictly separated
  for (const auto& st : fam.stages) {
    // certified interleaving: t_n < max f and max f certified below t_{n+1}
    CHECK(st.max_f.hi > st.t);
    CHECK(st.max_f.lo < st.t_next);
  }
  CHECK(fam.stages[1].connects_to_previous);
  // the two stages genuinely climb
  CHECK(fam.stages[0].max_f.hi < fam.stages[1].max_f.lo);
  CHECK(fam.stages[0].dim.hi <= fam.stages[1].dim.hi);
  // re-verification from the raw automata: stage components really are
  // subhorseshoes of the inner prunes
  for (const auto& st : fam.stages) {
    const auto& a = lab.pruned(st.t_next, PruneMode::inner);
    for (const auto& w : st.component) CHECK(a.find_state(w).has_value());
  }
}

TEST_CASE("theta word from a single-stage family is the base orbit") {
  Resolution res = small_res();
  res.window = 4;
  ShiftLab lab(2, res);
  // a family whose only stage is the 2-bar orbit
  auto fam = lab.increasing_family(0.5, parse_rational("1.8"), 1, Rational(1, 8));
  REQUIRE(fam.stages.size() == 1);
  REQUIRE(fam.stages[0].component.size() == 1);
  auto th = lab.theta_generate(fam.stages[0].component, fam, 2, {4, 8, 16});
  for (int s : th.word) CHECK(s == 2);
  // Lagrange estimate encloses sqrt 8
  QuadraticValue s8 = QuadraticValue::sqrt_of(8);
  CHECK(s8.compare(th.lagrange_estimate.lo) >= 0);
  CHECK(s8.compare(th.lagrange_estimate.hi) <= 0);
}

TEST_CASE("theta estimate lands in the final stage max f and is gap-stable") {
  Resolution res = small_res();
  res.window = 4;
  ShiftLab lab(2, res);
  auto fam = lab.increasing_family(0.5, parse_rational("0.45"), 2, Rational(1, 2));
  REQUIRE(fam.complete);
  auto th = lab.theta_generate(fam.stages.front().component, fam, 2, {4, 8, 16});
  QInterval target{fam.stages.back().max_f.lo - th.window_err,
                   fam.stages.back().max_f.hi + th.window_err};
  CHECK(target.contains(th.lagrange_estimate.lo));
  CHECK(target.contains(th.lagrange_estimate.hi));

  auto th2 = lab.theta_generate(fam.stages.front().component, fam, 2, {8, 16, 32});
  Rational drift = th2.lagrange_estimate.lo - th.lagrange_estimate.lo;
  if (drift < 0) drift = -drift;
  Rational err = th.window_err > th2.window_err ? th.window_err : th2.window_err;
  CHECK(drift <= err);

  CHECK_THROWS_AS(lab.theta_generate(fam.stages.front().component, fam, 2,
                                     std::vector<int>{4, 4, 4}),
                  std::invalid_argument);
}

TEST_CASE("classify: D-zero at sqrt 5, J-like above three") {
  ShiftLab lab(2, small_res());
  std::vector<Rational> grid{Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  auto c5 = lab.classify_point(parse_rational("2.2360679"), grid);
  CHECK(c5.label == PointClass::d_zero);

  auto c31 = lab.classify_point(parse_rational("3.1"), grid);
  CHECK((c31.label == PointClass::j_like || c31.label == PointClass::f_like ||
         c31.label == PointClass::indeterminate));
  CHECK(c31.label != PointClass::jtilde_like);
  CHECK(c31.label != PointClass::d_zero);

  // eta-minus point: theorem predicts J; assert non-contradiction
  auto em = lab.eta_minus(0.5, Rational(1, 64));
  auto cem = lab.classify_point(em.t_lo, grid);
  CHECK((cem.label == PointClass::j_like || cem.label == PointClass::f_like ||
         cem.label == PointClass::indeterminate));

  CHECK_THROWS_AS(lab.classify_point(Rational(3), std::vector<Rational>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      lab.classify_point(Rational(3), {Rational(1, 4), Rational(1, 2)}),
      std::invalid_argument);
}

TEST_CASE("classify: left-isolated point right above three is F-like") {
  // just above 3 the spectrum points sit in J; the all-cycles certificate
  // immediately to the left upgrades the label to F-like at grid resolution
  ShiftLab lab(2, small_res());
  auto c = lab.classify_point(parse_rational("3.005"),
                              {Rational(1, 2), Rational(1, 4), Rational(1, 8)});
  CHECK(c.label == PointClass::f_like);
  CHECK(c.left_gap_certified);
}

TEST_CASE("theta fails loudly when the family does not connect") {
  Resolution res = small_res();
  res.window = 4;
  ShiftLab lab(2, res);
  // hand-made family: base orbit 1-bar, stage orbit 2-bar, at a level where
  // the outer prune still separates them
  ShiftLab::Family fam;
  ShiftLab::FamilyStage st;
  st.t = parse_rational("2.5");
  st.t_next = parse_rational("2.95");
  st.component = {Word{std::vector<int>(9, 2)}};
  st.max_f = QInterval{parse_rational("2.82"), parse_rational("2.83")};
  fam.stages.push_back(st);
  std::vector<Word> base{Word{std::vector<int>(9, 1)}};
  CHECK_THROWS_AS(lab.theta_generate(base, fam, 1, {4, 8}), std::runtime_error);
}

TEST_CASE("classify_eps: synthetic low-dimension carrier is Jtilde-like") {
  // C2-like high-dimensional block far below t, plus a 4-bar cycle whose
  // Lagrange value 2 sqrt 5 sits exactly at t: the only spectrum near t
  // comes from a low-dimension component.
  auto full = build_full_shift(4, 1);
  std::vector<uint32_t> keep;
  for (uint32_t i = 0; i < full.size(); ++i) {
    bool c2 = true;
    for (uint8_t s : full.state_word(i))
      if (s > 2) c2 = false;
    if (c2) keep.push_back(i);
  }
  keep.push_back(*full.find_state(Word{4, 4, 4}));
  std::sort(keep.begin(), keep.end());
  auto synth = induced_subautomaton(full, keep);

  Rational t = QuadraticValue::sqrt_of(20).enclosure(Rational(1, 1000000)).lo;
  Resolution res = small_res();
  auto v = classify_eps(synth, t, Rational(1, 2), /*d_lo=*/0.4, res);
  CHECK(v.components == 2);
  CHECK(v.high_dim_components == 1);   // the C2 block
  CHECK(v.all_high_miss);              // its values stay below 2.9 << t
  CHECK(!v.some_high_meet);
  CHECK(!v.all_cycles);
}

TEST_CASE("two_d_bracket crosses methods coherently") {
  Resolution res = small_res();
  res.window = 3;
  res.r_max = 20;
  ShiftLab lab(2, res);
  auto b = lab.two_d_bracket(parse_rational("3.3"));
  CHECK(b.lo <= b.hi);
  CHECK(b.lo >= b.box_lo - 1e-12);
  CHECK(b.hi <= b.box_hi + 1e-12);
  CHECK(b.window_delta >= 0.0);
}

TEST_CASE("brackets tighten with window and r_max") {
  Resolution coarse = small_res();  // window 3, r_max 20
  Resolution fine = small_res();
  fine.window = 4;
  fine.r_max = 30;
  for (const char* ts : {"3.1", "3.2", "3.3"}) {
    auto pc = ShiftLab(2, coarse).D_of_t(parse_rational(ts));
    auto pf = ShiftLab(2, fine).D_of_t(parse_rational(ts));
    CHECK(pf.d_hi - pf.d_lo <= pc.d_hi - pc.d_lo);
  }
}
