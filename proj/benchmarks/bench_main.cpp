#include "cfs/automaton.hpp"
#include "cfs/continuant.hpp"
#include "cfs/decompose.hpp"
#include "cfs/dimension.hpp"
#include "cfs/spectra.hpp"

#include <benchmark/benchmark.h>

using namespace cfs;

static void BM_Convergents(benchmark::State& state) {
  std::vector<int> syms;
  for (int i = 0; i < state.range(0); ++i) syms.push_back(1 + (i * 7) % 4);
  Word w{syms};
  for (auto _ : state) {
    auto c = convergents(w);
    benchmark::DoNotOptimize(c.q.get_mpz_t());
  }
}
BENCHMARK(BM_Convergents)->Arg(16)->Arg(64)->Arg(256);

static void BM_CoveringCountC2(benchmark::State& state) {
  std::vector<int> c2{1, 2};
  for (auto _ : state) {
    uint64_t n = covering_count(c2, static_cast<int>(state.range(0)), uint64_t{1} << 33);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_CoveringCountC2)->Arg(15)->Arg(20)->Arg(25);

static void BM_BuildFullShift(benchmark::State& state) {
  BuildOptions opts;
  for (auto _ : state) {
    auto a = build_full_shift(4, static_cast<int>(state.range(0)), opts);
    benchmark::DoNotOptimize(a.size());
  }
}
BENCHMARK(BM_BuildFullShift)->Arg(2)->Arg(3)->Arg(4);

static void BM_PruneDecompose(benchmark::State& state) {
  auto full = build_full_shift(4, 3, {});
  Rational t(3334384, 1000000);
  for (auto _ : state) {
    auto p = prune_sublevel(full, t, PruneMode::outer);
    auto d = scc_decompose(p);
    benchmark::DoNotOptimize(d.subhorseshoes.size());
  }
}
BENCHMARK(BM_PruneDecompose);

static void BM_PressureC2(benchmark::State& state) {
  auto a = alphabet_subshift({1, 2}, 4, {});
  std::vector<uint32_t> all(a.size());
  for (uint32_t i = 0; i < a.size(); ++i) all[i] = i;
  auto w = cylinder_weight_automaton(a, all);
  for (auto _ : state) {
    auto est = pressure_dim(w, 1e-6);
    benchmark::DoNotOptimize(est.lo);
  }
}
BENCHMARK(BM_PressureC2);

static void BM_MarkovValue(benchmark::State& state) {
  Word period{2, 2, 1, 1, 2, 2, 1, 1, 1, 1};
  Rational tol(1, BigInt(1000000000000));
  for (auto _ : state) {
    auto p = markov_value({{}, period}, tol);
    benchmark::DoNotOptimize(p.enclosure.lo.get_num().get_mpz_t());
  }
}
BENCHMARK(BM_MarkovValue);

BENCHMARK_MAIN();
