#include <benchmark/benchmark.h>

#include "lowrank/counterexample.hpp"
#include "lowrank/linesearch.hpp"
#include "lowrank/retraction.hpp"
#include "lowrank/sampling.hpp"
#include "lowrank/variety.hpp"

namespace {

using namespace lowrank;

void BM_ProjectToVariety(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const VarietyBudget budget(n, n, n / 4 + 1);
  sampling::Rng rng(3);
  const Matrix a = sampling::uniform_matrix(n, n, rng);
  for (auto _ : state) {
    auto p = project_to_variety(a, budget);
    benchmark::DoNotOptimize(p.matrix().entries().data());
  }
}
BENCHMARK(BM_ProjectToVariety)->RangeMultiplier(2)->Range(8, 64);

void BM_ProjectiveRetraction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const VarietyBudget budget(n, n, n / 4 + 1);
  sampling::Rng rng(4);
  const VarietyPoint x = sampling::random_point(budget, budget.r() - 1, rng);
  const Matrix v = tangent_embed(sampling::random_tangent_vector(tangent_cone_chart(x), rng));
  for (auto _ : state) {
    auto y = projective_retraction(x, 0.1 * v);
    benchmark::DoNotOptimize(y.matrix().entries().data());
  }
}
BENCHMARK(BM_ProjectiveRetraction)->RangeMultiplier(2)->Range(8, 64);

void BM_CounterexampleSweep(benchmark::State& state) {
  const auto spec = counterexample::default_spec();
  std::vector<double> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(0.71 + 0.6 * i / 49.0);
  for (auto _ : state) {
    auto records = counterexample::sweep(spec, grid);
    benchmark::DoNotOptimize(records.data());
  }
}
BENCHMARK(BM_CounterexampleSweep);

void BM_P2gdApproximation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const VarietyBudget budget(n, n, 2);
  sampling::Rng rng(5);
  const Objective obj = approximation_objective(sampling::uniform_matrix(n, n, rng));
  const VarietyPoint x0 = make_point(Matrix(n, n), budget);
  for (auto _ : state) {
    auto trace = p2gd_solve(x0, obj, LineSearchConfig{}, std::nullopt, 200);
    benchmark::DoNotOptimize(trace.records.data());
  }
}
BENCHMARK(BM_P2gdApproximation)->Arg(6)->Arg(12)->Arg(24);

}  // namespace
