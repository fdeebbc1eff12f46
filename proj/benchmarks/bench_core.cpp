#include <numbers>

#include <benchmark/benchmark.h>

#include "wormkit/diagnostics.hpp"
#include "wormkit/quadrature.hpp"
#include "wormkit/special_fn.hpp"

using namespace wormkit;

static void BM_LogGamma(benchmark::State& state) {
  cplx z(0.3, -7.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::log_gamma(z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_WormInner(benchmark::State& state) {
  const WormParams p(std::numbers::pi);
  const PowerSpec a = resolve({3, 1}, p), b = resolve({8, 1}, p);
  for (auto _ : state) benchmark::DoNotOptimize(normalized_worm_inner(a, b, p));
}
BENCHMARK(BM_WormInner);

static void BM_RedundancyResidual(benchmark::State& state) {
  const WormParams p(std::numbers::pi);
  const PowerSpec target = resolve({0, 0}, p);
  std::vector<PowerSpec> basis;
  for (int ell = 1; ell <= state.range(0); ++ell) basis.push_back(resolve({ell, 0}, p));
  for (auto _ : state) {
    benchmark::DoNotOptimize(projection_residual(gram_system(target, basis, p)));
  }
}
BENCHMARK(BM_RedundancyResidual)->Arg(4)->Arg(12)->Arg(24);

static void BM_QuadDisk(benchmark::State& state) {
  QuadConfig q;
  q.radial_nodes = q.angular_nodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad_disk_inner(cplx(0.7, 0.3), cplx(0.2, -0.1), q));
  }
}
BENCHMARK(BM_QuadDisk)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  const WormParams p(std::numbers::pi);
  QuadConfig q;
  q.mc_samples = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_worm_inner({0.5, 0}, {0.5, 0}, p, q));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
