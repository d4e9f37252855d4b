#include <benchmark/benchmark.h>

#include <memory>

#include "walksgd/avcov.hpp"
#include "walksgd/fixtures.hpp"

using namespace walksgd;

static void BM_ExactCovariance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = Graph::random_connected(n, 2 * n, 3);
  const TransitionKernel k = srw_kernel(g);
  const TestFunction f = TestFunction::random_gaussian(n, 5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_asym_cov(k, f).sigma.sum());
  }
}
BENCHMARK(BM_ExactCovariance)->Arg(16)->Arg(64)->Arg(256);

static void BM_ExactCovarianceEdgeSpace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = Graph::random_connected(n, 2 * n, 3);
  const EdgeKernel ek = nbrw_edge_kernel(g);
  const TestFunction f = TestFunction::random_gaussian(n, 5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_asym_cov(ek, f).sigma.sum());
  }
}
BENCHMARK(BM_ExactCovarianceEdgeSpace)->Unit(benchmark::kMillisecond)->Arg(16)->Arg(64);

static void BM_McCovariance(benchmark::State& state) {
  const Graph g = fixtures::g2();
  auto kernel = std::make_shared<TransitionKernel>(srw_kernel(g));
  InputSequence seq = InputSequence::make_chain_walk(kernel, 1);
  const TestFunction f = TestFunction::random_gaussian(5, 5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mc_asym_cov(seq, f, state.range(0), 4, 7).sigma.sum());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}
BENCHMARK(BM_McCovariance)->Unit(benchmark::kMillisecond)->Arg(10000)->Arg(100000);
