#include <benchmark/benchmark.h>

#include "miquel/circle_pattern.hpp"
#include "miquel/lattice.hpp"

using namespace miquel;

namespace {

void BM_MiquelMove(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CirclePattern p = generate_kasteleyn_cauchy_data(n, n, 7);
  const auto faces = static_cast<std::uint32_t>(n * n);
  std::uint32_t f = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(miquel_move(p, FaceId{f}));
    f = (f + 1) % faces;
  }
}
BENCHMARK(BM_MiquelMove)->Arg(4)->Arg(8)->Arg(16);

void BM_StarRatios(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CirclePattern p = generate_kasteleyn_cauchy_data(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(pattern_star_ratios(p.centers()));
}
BENCHMARK(BM_StarRatios)->Arg(4)->Arg(8)->Arg(16);

void BM_DynamicsStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TorusPatternState s = make_torus_state(generate_kasteleyn_cauchy_data(n, n, 7));
  for (auto _ : state) benchmark::DoNotOptimize(miquel_dynamics_step(s));
  state.SetItemsProcessed(state.iterations() * n * n / 2);
}
BENCHMARK(BM_DynamicsStep)->Arg(4)->Arg(8)->Arg(16);

void BM_PropagateOctahedral(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  const TorusPatternState s = make_torus_state(generate_kasteleyn_cauchy_data(4, 4, 7));
  const int reach = levels + 4;
  OctahedralPatch seed(Window{-reach, reach, -reach, reach, 0, 1});
  write_slice(s, 4, 4, 0, seed);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_octahedral(seed, levels));
}
BENCHMARK(BM_PropagateOctahedral)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
