#include "minsurf/pq_kernel.hpp"
#include "minsurf/surface_family.hpp"

#include <benchmark/benchmark.h>

using namespace minsurf;

static void BM_PqRecurrence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ParamPoint p{0.7, -1.3};
  for (auto _ : state) benchmark::DoNotOptimize(pq_eval_recurrence(n, p));
}
BENCHMARK(BM_PqRecurrence)->Arg(5)->Arg(12)->Arg(30)->Arg(60);

static void BM_PqDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ParamPoint p{0.7, -1.3};
  for (auto _ : state) benchmark::DoNotOptimize(pq_eval_direct(n, p));
}
BENCHMARK(BM_PqDirect)->Arg(5)->Arg(12)->Arg(30)->Arg(60);

static void BM_EvalSurface(benchmark::State& state) {
  const auto spec = make_surface(static_cast<int>(state.range(0)), 1.0);
  const ParamPoint p{0.4, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(eval_surface(spec, p));
}
BENCHMARK(BM_EvalSurface)->Arg(3)->Arg(7)->Arg(12);

static void BM_SurfaceJet(benchmark::State& state) {
  const auto spec = make_surface(static_cast<int>(state.range(0)), 1.0);
  const auto sel = SurfaceSelector::family(0.3);
  const ParamPoint p{0.4, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(surface_jet(spec, sel, p));
}
BENCHMARK(BM_SurfaceJet)->Arg(3)->Arg(7)->Arg(12);
