#include <benchmark/benchmark.h>

#include <random>

#include "nonarch/expr.hpp"
#include "nonarch/novikov.hpp"
#include "nonarch/quantum.hpp"
#include "nonarch/selftest.hpp"

using namespace nonarch;

static void BM_ScalarMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int terms = static_cast<int>(state.range(0));
  NovikovScalar a = random_scalar(rng, terms, Rational(0), Rational(4));
  NovikovScalar b = random_scalar(rng, terms, Rational(0), Rational(4));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(terms);
}
BENCHMARK(BM_ScalarMultiply)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_ScalarInvert(benchmark::State& state) {
  std::mt19937_64 rng(2);
  NovikovScalar a = NovikovScalar(1.0) + random_scalar(rng, 3, Rational(1, 4), Rational(1));
  const Rational target(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(invert(a, target));
}
BENCHMARK(BM_ScalarInvert)->DenseRange(2, 8, 2);

static void BM_PuiseuxRoots(benchmark::State& state) {
  std::mt19937_64 rng(3);
  RootSample s = random_root_polynomial(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(puiseux_roots(s.poly, Rational(3)));
}
BENCHMARK(BM_PuiseuxRoots)->DenseRange(1, 5);

static void BM_SeriesMultiply(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const int terms = static_cast<int>(state.range(0));
  LaurentSeries f = random_series(rng, 2, terms, Rational(0), Rational(3));
  LaurentSeries g = random_series(rng, 2, terms, Rational(0), Rational(3));
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_SeriesMultiply)->RangeMultiplier(2)->Range(2, 16);

static void BM_ParseEvaluate(benchmark::State& state) {
  const std::string text = "Y1 + Y2 + T*(Y1*Y2)^-1 + (1+T^(1/2))^-3*Y1^2";
  for (auto _ : state) {
    Expr e = parse_expression(text);
    benchmark::DoNotOptimize(evaluate_expression(e, expression_variables(e), Rational(4)));
  }
}
BENCHMARK(BM_ParseEvaluate);

static void BM_C1Eigenvalues(benchmark::State& state) {
  QuantumRing r = qh_projective(static_cast<int>(state.range(0)), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(c1_eigenvalues(r, Rational(3)));
}
BENCHMARK(BM_C1Eigenvalues)->DenseRange(1, 6);
