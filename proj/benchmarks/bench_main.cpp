#include <benchmark/benchmark.h>

#include "matclass/assignment.hpp"
#include "matclass/classify.hpp"
#include "matclass/rng.hpp"
#include "matclass/search.hpp"

using namespace matclass;

namespace {

Matrix random_matrix(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  Matrix m(n);
  for (auto& v : m.entries()) v = rng.uniform(-1.0, 1.0);
  return m;
}

Matrix shifted_random(int n, std::uint64_t seed, double ridge) {
  Matrix m = random_matrix(n, seed);
  for (int i = 0; i < n; ++i) m(i, i) += ridge;
  return m;
}

void BM_minor_table(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(principal_minor_table(a));
  state.SetComplexityN(n);
}
BENCHMARK(BM_minor_table)->DenseRange(6, 14, 2);

void BM_eigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(a));
}
BENCHMARK(BM_eigenvalues)->Arg(4)->Arg(8)->Arg(16);

void BM_dispersal_d1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = shifted_random(n, 3, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(dispersal_sign_check(a, 1, false));
}
BENCHMARK(BM_dispersal_d1)->Arg(6)->Arg(8)->Arg(10);

void BM_hadamard_fischer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MinorTable t = principal_minor_table(shifted_random(n, 4, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(hadamard_fischer_check(t));
}
BENCHMARK(BM_hadamard_fischer)->Arg(8)->Arg(10)->Arg(12);

void BM_classify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = shifted_random(n, 5, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify(a));
}
BENCHMARK(BM_classify)->Arg(4)->Arg(6)->Arg(8);

void BM_tau_membership(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix_in_class(MatrixClass::tau, n, 6, 20000);
  for (auto _ : state) benchmark::DoNotOptimize(in_class(a, MatrixClass::tau));
}
BENCHMARK(BM_tau_membership)->Arg(3)->Arg(4)->Arg(5);

void BM_search_iteration(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.seed = 7;
  cfg.iterations = 200;
  cfg.restarts = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        extremal_search(MatrixClass::tau, Objective::min_varga_margin, cfg));
}
BENCHMARK(BM_search_iteration)->Unit(benchmark::kMillisecond);

void BM_fit_minors(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TargetMinorTable t = targets_from_minor_table(principal_minor_table(random_matrix(n, 8)));
  FitConfig fit;
  fit.seed = 9;
  fit.starts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(fit_matrix_to_minors(t, fit));
  state.SetLabel("starts=4");
}
BENCHMARK(BM_fit_minors)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
