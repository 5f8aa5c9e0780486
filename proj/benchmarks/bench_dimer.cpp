#include <benchmark/benchmark.h>

#include "miquel/dimer.hpp"
#include "miquel/lattice.hpp"

using namespace miquel;

namespace {

void BM_EnumerateMatchings(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SurfaceGraph g = build_square_grid_torus(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_matchings(g));
}
BENCHMARK(BM_EnumerateMatchings)->Arg(2)->Arg(4)->Arg(6);

void BM_DimerStatistics(benchmark::State& state) {
  const CirclePattern p = generate_kasteleyn_cauchy_data(4, 4, 3);
  const EdgeWeights w = weights_from_pattern(p);
  for (auto _ : state) benchmark::DoNotOptimize(dimer_statistics(p.graph(), w));
}
BENCHMARK(BM_DimerStatistics);

void BM_UrbanRenewalCheck(benchmark::State& state) {
  const CirclePattern p = generate_kasteleyn_cauchy_data(4, 4, 3);
  const CirclePattern q = miquel_move(p, FaceId{5});
  const EdgeWeights w = weights_from_pattern(p), w2 = weights_from_pattern(q);
  for (auto _ : state) benchmark::DoNotOptimize(urban_renewal_check(p.graph(), w, FaceId{5}, q.graph(), w2));
}
BENCHMARK(BM_UrbanRenewalCheck);

void BM_FaceWeightUpdate(benchmark::State& state) {
  const CirclePattern p = generate_kasteleyn_cauchy_data(8, 8, 3);
  const FaceWeights t = face_weights(p.graph(), weights_from_pattern(p));
  for (auto _ : state) benchmark::DoNotOptimize(face_weight_update(t, p.graph(), FaceId{9}));
}
BENCHMARK(BM_FaceWeightUpdate);

}  // namespace

BENCHMARK_MAIN();
