#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "miquel/clifford.hpp"
#include "miquel/geometry.hpp"

using namespace miquel;

namespace {

std::vector<Complex> points(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> out(n);
  for (auto& z : out) z = Complex(u(rng), u(rng));
  return out;
}

void BM_CrossRatio(benchmark::State& state) {
  const auto z = points(4096, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_ratio(z[i & 4095], z[(i + 1) & 4095], z[(i + 2) & 4095], z[(i + 3) & 4095]));
    ++i;
  }
}
BENCHMARK(BM_CrossRatio);

void BM_MobiusMutation(benchmark::State& state) {
  const auto z = points(4096, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    const MobiusMap m = mobius_mutation(z[i & 4095], z[(i + 1) & 4095], z[(i + 2) & 4095], z[(i + 3) & 4095]);
    benchmark::DoNotOptimize(m(ExtendedComplex(z[(i + 4) & 4095])));
    ++i;
  }
}
BENCHMARK(BM_MobiusMutation);

void BM_SecondIntersection(benchmark::State& state) {
  const auto z = points(4096, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const Complex q = z[i & 4095], m1 = z[(i + 1) & 4095], m2 = z[(i + 2) & 4095];
    const Circle a = Circle::make_circle(m1, std::abs(q - m1));
    const Circle b = Circle::make_circle(m2, std::abs(q - m2));
    benchmark::DoNotOptimize(second_intersection(a, b, q));
    ++i;
  }
}
BENCHMARK(BM_SecondIntersection);

void BM_CliffordC4(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const PencilSample s = random_pencil(seed++, 4);
    benchmark::DoNotOptimize(build_c4(s.base, s.circles));
  }
}
BENCHMARK(BM_CliffordC4);

}  // namespace

BENCHMARK_MAIN();
