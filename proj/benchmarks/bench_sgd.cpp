#include <benchmark/benchmark.h>

#include <memory>

#include "walksgd/fixtures.hpp"
#include "walksgd/sgd.hpp"

using namespace walksgd;

static void BM_SgdQuadraticWalk(benchmark::State& state) {
  const Graph g = fixtures::standin62();
  const auto model = make_quadratic_scalar(g.degrees());
  auto kernel = std::make_shared<TransitionKernel>(srw_kernel(g));
  const long T = state.range(0);
  const auto steps = StepSchedule::poly(0.9).precompute(T);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_sgd(*model, InputSequence::make_chain_walk(kernel, 1), steps, T, {}));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_SgdQuadraticWalk)->Unit(benchmark::kMillisecond)->Arg(100000);

static void BM_SgdLogisticWalk(benchmark::State& state) {
  const Graph g = fixtures::standin62();
  const auto [X, y] = synthetic_logistic_data(g.num_nodes(), 108, 0.1, 3);
  const auto model = make_logistic_ridge(X, y);
  auto kernel = std::make_shared<TransitionKernel>(srw_kernel(g));
  const long T = state.range(0);
  const auto steps = StepSchedule::poly(0.9).precompute(T);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_sgd(*model, InputSequence::make_chain_walk(kernel, 1), steps, T, {}));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_SgdLogisticWalk)->Unit(benchmark::kMillisecond)->Arg(100000);

static void BM_SequenceThroughput(benchmark::State& state) {
  const Graph g = fixtures::standin62();
  auto graph = std::make_shared<Graph>(g);
  auto kernel = std::make_shared<TransitionKernel>(srw_kernel(g));
  const int which = static_cast<int>(state.range(0));
  InputSequence seq =
      which == 0   ? InputSequence::make_iid(degree_distribution(g), 1)
      : which == 1 ? InputSequence::make_chain_walk(kernel, 1)
      : which == 2 ? InputSequence::make_nbrw_walk(graph, 1)
                   : InputSequence::make_random_shuffle(g.num_nodes(), 1);
  long sink = 0;
  for (auto _ : state) {
    for (int k = 0; k < 1000; ++k) sink += seq.next();
  }
  benchmark::DoNotOptimize(sink);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SequenceThroughput)->Arg(0)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
