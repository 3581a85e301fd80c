#include <benchmark/benchmark.h>

#include <random>

#include "nonarch/critical.hpp"
#include "nonarch/fibration.hpp"
#include "nonarch/floer.hpp"
#include "nonarch/models.hpp"
#include "nonarch/selftest.hpp"
#include "nonarch/wallcross.hpp"

using namespace nonarch;

static void BM_NewtonLiftCP2(benchmark::State& state) {
  const Rational order(static_cast<int>(state.range(0)));
  CriticalSystem sys(builtin_potential("cp2_chart", {Rational(1)}, order + Rational(3)));
  auto seeds = builtin_seeds("cp2_chart", {Rational(1)});
  for (auto _ : state)
    for (const auto& s : seeds) benchmark::DoNotOptimize(newton_lift(sys, s, order));
}
BENCHMARK(BM_NewtonLiftCP2)->DenseRange(2, 8, 2);

static void BM_HfDimension(benchmark::State& state) {
  ExteriorAlgebra alg(2, false);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), Rational(3));
  std::mt19937_64 rng(5);
  TorusPoint y = random_unit_point(rng, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hf_dimension(m, y));
}
BENCHMARK(BM_HfDimension);

static void BM_MinimalModel(benchmark::State& state) {
  const int arity = static_cast<int>(state.range(0));
  DeformedChainModel dm = deformed_chain_model(clifford_cp2_classes(Rational(3)), Rational(1), Rational(2), arity);
  for (auto _ : state) benchmark::DoNotOptimize(hpl_minimal_model(dm.m_chain, dm.con, {arity, arity}));
}
BENCHMARK(BM_MinimalModel)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_ApplyChange(benchmark::State& state) {
  const Rational cut(static_cast<int>(state.range(0)));
  CoordinateChange chg = CoordinateChange::focus_focus(Rational(1, 2), cut);
  std::mt19937_64 rng(6);
  LaurentSeries f = random_series(rng, 2, 6, Rational(0), cut);
  for (auto _ : state) benchmark::DoNotOptimize(apply_change(chg, f));
}
BENCHMARK(BM_ApplyChange)->DenseRange(2, 5);

static void BM_FibrationSample(benchmark::State& state) {
  PsiModel psi = default_psi();
  for (auto _ : state) benchmark::DoNotOptimize(fibration_sample(psi, static_cast<int>(state.range(0)), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FibrationSample)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
