#include <benchmark/benchmark.h>

#include "lowrank/sampling.hpp"
#include "lowrank/svd.hpp"

namespace {

void BM_JacobiSvd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lowrank::sampling::Rng rng(1);
  const lowrank::Matrix a = lowrank::sampling::uniform_matrix(n, n, rng);
  for (auto _ : state) {
    auto f = lowrank::svd(a);
    benchmark::DoNotOptimize(f.singular_values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiSvd)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_OrthonormalComplement(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  lowrank::sampling::Rng rng(2);
  const lowrank::Matrix u = lowrank::sampling::random_orthonormal(m, m / 4 + 1, rng);
  for (auto _ : state) {
    auto c = lowrank::orthonormal_complement(u);
    benchmark::DoNotOptimize(c.entries().data());
  }
}
BENCHMARK(BM_OrthonormalComplement)->RangeMultiplier(2)->Range(8, 128);

}  // namespace
