#include "minsurf/diffgeo.hpp"
#include "minsurf/mesh_io.hpp"
#include "minsurf/shape_analysis.hpp"

#include <benchmark/benchmark.h>

using namespace minsurf;

static void BM_Curvatures(benchmark::State& state) {
  const auto spec = make_surface(7, 1.0);
  const auto jet = surface_jet(spec, SurfaceSelector::base(), {0.4, 0.9});
  for (auto _ : state) benchmark::DoNotOptimize(curvatures(jet));
}
BENCHMARK(BM_Curvatures);

static void BM_Tessellate(benchmark::State& state) {
  const auto spec = make_surface(7, 1.0);
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(tessellate(spec, SurfaceSelector::base(), DomainRect::square(1.0), res, res, true));
  state.SetItemsProcessed(state.iterations() * (res + 1) * (res + 1));
}
BENCHMARK(BM_Tessellate)->Arg(64)->Arg(256);

static void BM_VerifySurface(benchmark::State& state) {
  const auto spec = make_surface(static_cast<int>(state.range(0)), 1.0);
  const auto selectors = default_selectors();
  const ParamGrid grid = ParamGrid::square(1.0, 41);
  for (auto _ : state) benchmark::DoNotOptimize(verify_surface(spec, selectors, grid));
}
BENCHMARK(BM_VerifySurface)->Arg(5)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SelfIntersections(benchmark::State& state) {
  const auto spec = make_surface(5, 1.0);
  SelfIntersectionOptions opts;
  opts.domain = DomainRect::square(4.0);
  opts.grid_res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_self_intersections(spec, SurfaceSelector::base(), opts));
}
BENCHMARK(BM_SelfIntersections)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
