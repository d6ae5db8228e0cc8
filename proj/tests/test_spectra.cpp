#include "cfs/spectra.hpp"

#include "cfs/decompose.hpp"

#include <doctest.h>

#include <random>

using namespace cfs;

namespace {

const Rational kTol(1, BigInt(1000000000000));

bool quad_inside(const QuadraticValue& v, const QInterval& box) {
  return v.compare(box.lo) >= 0 && v.compare(box.hi) <= 0;
}

}  // namespace

TEST_CASE("markov values of the anchor orbits") {
  SpectrumPoint p1 = markov_value({{}, Word{1}}, kTol);
  CHECK(p1.value == QuadraticValue::sqrt_of(5));
  CHECK(p1.enclosure.width() <= kTol);

  SpectrumPoint p2 = markov_value({{}, Word{2}}, kTol);
  CHECK(p2.value == QuadraticValue::sqrt_of(8));

  SpectrumPoint p2211 = markov_value({{}, Word{2, 2, 1, 1}}, kTol);
  CHECK(p2211.value ==
        QuadraticValue::sqrt_of(221) / QuadraticValue::from_rational(Rational(5)));

  CHECK_THROWS_AS(markov_value({{}, Word{}}, kTol), std::invalid_argument);
  CHECK_THROWS_AS(markov_value({Word{1}, Word{2}}, kTol), std::invalid_argument);
}

TEST_CASE("markov value is rotation and doubling invariant") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len_d(1, 6), sym_d(1, 3);
  for (int it = 0; it < 40; ++it) {
    std::vector<int> syms(len_d(rng));
    for (auto& s : syms) s = sym_d(rng);
    Word w{syms};
    SpectrumPoint base = markov_value({{}, w}, kTol);
    for (size_t k = 1; k < w.size(); ++k)
      CHECK(markov_value({{}, w.rotated_left(k)}, kTol).value == base.value);
    CHECK(markov_value({{}, w.concat(w)}, kTol).value == base.value);
  }
}

TEST_CASE("lagrange value ignores the preperiod") {
  SpectrumPoint l = lagrange_value({Word{2, 2, 2}, Word{1}}, kTol);
  CHECK(l.value == QuadraticValue::sqrt_of(5));
  CHECK(l.kind == SpectrumKind::lagrange);

  // preperiod (1), period (2,1): the tail realizes sqrt 12 = 2 sqrt 3
  SpectrumPoint m = lagrange_value({Word{1}, Word{2, 1}}, kTol);
  CHECK(m.value == QuadraticValue::sqrt_of(12));
  CHECK(m.value == markov_value({{}, Word{2, 1}}, kTol).value);
}

TEST_CASE("markov triples against the brute-force oracle") {
  // oracle: all x <= y <= z <= 200 solving the Markov equation
  std::vector<MarkovTriple> oracle;
  for (long x = 1; x <= 200; ++x)
    for (long y = x; y <= 200; ++y)
      for (long z = y; z <= 200; ++z)
        if (x * x + y * y + z * z == 3 * x * y * z)
          oracle.push_back({x, y, z});
  std::sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
    return a.z < b.z;
  });

  auto got = markov_triples(9);
  REQUIRE(got.size() == 9);
  std::vector<long> expect_z{1, 2, 5, 13, 29, 34, 89, 169, 194};
  for (size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].z == expect_z[i]);
    CHECK(got[i] == oracle[i]);
    CHECK(got[i].x * got[i].x + got[i].y * got[i].y + got[i].z * got[i].z ==
          3 * got[i].x * got[i].y * got[i].z);
  }
}

TEST_CASE("triple spectrum points stay below 3") {
  for (const auto& t : markov_triples(12)) {
    QuadraticValue v = triple_spectrum_value(t.z);
    CHECK(v.compare(Rational(3)) < 0);
    CHECK(v.compare(Rational(2)) > 0);
  }
  CHECK(triple_spectrum_value(1) == QuadraticValue::sqrt_of(5));
  CHECK(triple_spectrum_value(2) == QuadraticValue::sqrt_of(8));
  CHECK(triple_spectrum_value(5) ==
        QuadraticValue::sqrt_of(221) / QuadraticValue::from_rational(Rational(5)));
}

TEST_CASE("low spectrum crosscheck finds periodic witnesses") {
  auto report = low_spectrum_crosscheck(5, 8, kTol);
  REQUIRE(report.rows.size() == 5);
  for (const auto& row : report.rows) {
    CHECK(row.matched);
    CHECK(row.exact);
  }
  CHECK(report.rows[0].witness_period == Word{1});
  CHECK(report.rows[1].witness_period == Word{2});
  // z = 5 pairs with the rotation class of (2,2,1,1)
  Word w5 = report.rows[2].witness_period;
  bool is_rotation = false;
  for (size_t k = 0; k < 4; ++k)
    if (w5 == Word{2, 2, 1, 1}.rotated_left(k)) is_rotation = true;
  CHECK(is_rotation);
}

TEST_CASE("max f over components") {
  auto a1 = build_full_shift(1, 1);
  std::vector<uint32_t> whole{0};
  QInterval r1 = max_f_over_component(a1, whole, 2);
  CHECK(quad_inside(QuadraticValue::sqrt_of(5), r1));
  CHECK(r1.width() <= Rational(1, 3));

  // all-twos singleton inside the N=2 shift
  auto a2 = prune_sublevel(build_full_shift(2, 2), Rational(29, 10),
                           PruneMode::outer);
  auto d2 = scc_decompose(a2);
  REQUIRE(d2.subhorseshoes.size() == 2);
  QInterval r2 = max_f_over_component(a2, d2.subhorseshoes[1], 2);
  CHECK(quad_inside(QuadraticValue::sqrt_of(8), r2));

  // full N=4 shift: max f = sqrt 32 on the (4,1)-orbit
  auto a4 = build_full_shift(4, 1);
  std::vector<uint32_t> all(a4.size());
  for (uint32_t i = 0; i < a4.size(); ++i) all[i] = i;
  QInterval r4 = max_f_over_component(a4, all, 2);
  CHECK(quad_inside(QuadraticValue::sqrt_of(32), r4));
  CHECK(markov_value({{}, Word{4, 1}}, kTol).value == QuadraticValue::sqrt_of(32));

  // width shrinks monotonically with refinement
  Rational prev;
  for (int ref = 0; ref <= 3; ++ref) {
    QInterval r = max_f_over_component(a1, whole, ref);
    if (ref > 0) CHECK(r.width() <= prev);
    prev = r.width();
  }

  // not strongly connected input is rejected
  auto chain = build_full_shift(2, 1);
  std::vector<uint32_t> two_states{0, 1};  // (1,1,1) and (1,1,2): no mutual reach
  CHECK_THROWS_AS(max_f_over_component(chain, two_states, 1),
                  std::invalid_argument);
}
