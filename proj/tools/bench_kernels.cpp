// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "thy/kernels.hpp"

namespace {

using thy::Matrix;
namespace k = thy::kernels;

Matrix random_adjacency(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution edge(density);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = edge(gen) ? 1 : 0;
  return m;
}

template <Matrix (*Fn)(const Matrix&, const Matrix&)>
void BM_multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_adjacency(n, 0.1, 1), b = random_adjacency(n, 0.1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b));
}

template <Matrix (*Fn)(const Matrix&, std::size_t)>
void BM_power_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_adjacency(n, 2.0 / n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, n));
}

template <Matrix (*Fn)(const Matrix&)>
void BM_floyd_warshall(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_adjacency(n, 2.0 / n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a));
}

}  // namespace

BENCHMARK(BM_multiply<k::reference::multiply>)->Name("multiply/reference")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_multiply<k::multiply>)->Name("multiply/openmp")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_power_sum<k::reference::power_sum>)->Name("power_sum/reference")->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_power_sum<k::power_sum>)->Name("power_sum/openmp")->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_floyd_warshall<k::reference::floyd_warshall>)
    ->Name("floyd_warshall/reference")
    ->RangeMultiplier(2)
    ->Range(16, 512);
BENCHMARK(BM_floyd_warshall<k::floyd_warshall>)->Name("floyd_warshall/openmp")->RangeMultiplier(2)->Range(16, 512);

BENCHMARK_MAIN();
