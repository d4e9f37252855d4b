#include <benchmark/benchmark.h>

#include "walksgd/fixtures.hpp"
#include "walksgd/kernels.hpp"

using namespace walksgd;

static void BM_MhrwBuild(benchmark::State& state) {
  const Graph g = Graph::random_connected(static_cast<int>(state.range(0)),
                                          2 * static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhrw_kernel(g).P.sum());
  }
}
BENCHMARK(BM_MhrwBuild)->Arg(16)->Arg(64)->Arg(256);

static void BM_Slem(benchmark::State& state) {
  const Graph g = Graph::random_connected(static_cast<int>(state.range(0)),
                                          2 * static_cast<int>(state.range(0)), 1);
  const TransitionKernel k = mhrw_kernel(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(slem(k));
  }
}
BENCHMARK(BM_Slem)->Arg(16)->Arg(64)->Arg(256);

static void BM_FmmcSolve(benchmark::State& state) {
  const Graph g = Graph::random_connected(static_cast<int>(state.range(0)),
                                          2 * static_cast<int>(state.range(0)), 1);
  FmmcOptions opts;
  opts.max_iters = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fmmc_kernel(g, opts).P.sum());
  }
}
BENCHMARK(BM_FmmcSolve)->Unit(benchmark::kMillisecond)->Arg(8)->Arg(32)->Arg(64);

static void BM_NbrwEdgeKernel(benchmark::State& state) {
  const Graph g = Graph::random_connected(static_cast<int>(state.range(0)),
                                          2 * static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nbrw_edge_kernel(g).P.sum());
  }
}
BENCHMARK(BM_NbrwEdgeKernel)->Arg(16)->Arg(64);
