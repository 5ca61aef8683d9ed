#include <benchmark/benchmark.h>

#include "rcsp/dpll.hpp"
#include "rcsp/factor_graph.hpp"
#include "rcsp/generators.hpp"
#include "rcsp/gf2.hpp"
#include "rcsp/local_search.hpp"
#include "rcsp/message_passing.hpp"
#include "rcsp/xorsat.hpp"

namespace {

using namespace rcsp;

CnfFormula ksat(int n, double alpha, std::uint64_t seed) {
  return gen_formula({EnsembleKind::ksat, n, 3, alpha, 1.0, RngSeed{seed, 0}}).cnf();
}

XorFormula xorsat(int n, double alpha, std::uint64_t seed) {
  return gen_formula({EnsembleKind::xorsat, n, 3, alpha, 1.0, RngSeed{seed, 0}}).xorf();
}

void BM_PrwsatFlips(benchmark::State& state) {
  const CnfFormula f = ksat(static_cast<int>(state.range(0)), 4.0, 1);
  const std::uint64_t steps = 100 * f.clauses.size();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(prwsat(f, steps, RngSeed{++seed, 0}).steps);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * steps));
}
BENCHMARK(BM_PrwsatFlips)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_BpSweeps(benchmark::State& state) {
  const FactorGraph fg(ksat(static_cast<int>(state.range(0)), 3.0, 2));
  MpParams p;
  p.max_sweeps = 20;
  p.epsilon = 1e-300;
  for (auto _ : state) benchmark::DoNotOptimize(bp_run(fg, p).sweeps);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 20 * fg.num_edges()));
}
BENCHMARK(BM_BpSweeps)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SpSweeps(benchmark::State& state) {
  const FactorGraph fg(ksat(static_cast<int>(state.range(0)), 4.2, 3));
  MpParams p;
  p.max_sweeps = 20;
  p.epsilon = 1e-300;
  for (auto _ : state) benchmark::DoNotOptimize(sp_run(fg, p).sweeps);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 20 * fg.num_edges()));
}
BENCHMARK(BM_SpSweeps)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Gf2Solve(benchmark::State& state) {
  const XorFormula xf = xorsat(static_cast<int>(state.range(0)), 0.9, 4);
  for (auto _ : state) benchmark::DoNotOptimize(gf2_solve(xf).rank);
}
BENCHMARK(BM_Gf2Solve)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_LeafRemoval(benchmark::State& state) {
  const XorFormula xf = xorsat(static_cast<int>(state.range(0)), 0.85, 5);
  for (auto _ : state) benchmark::DoNotOptimize(leaf_removal(xf).core_vars);
}
BENCHMARK(BM_LeafRemoval)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_DpllComplete(benchmark::State& state) {
  const CnfFormula f = ksat(static_cast<int>(state.range(0)), 4.26, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(dpll_complete(f, SplitHeuristic::guc, RngSeed{7, 0}, 100000000).stats.splits);
}
BENCHMARK(BM_DpllComplete)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_UnitClauseDescent(benchmark::State& state) {
  const CnfFormula f = ksat(static_cast<int>(state.range(0)), 2.0, 8);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_no_backtrack(f, SplitHeuristic::uc, RngSeed{++seed, 0}).success);
}
BENCHMARK(BM_UnitClauseDescent)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
