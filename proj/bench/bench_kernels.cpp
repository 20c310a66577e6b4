// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <cmath>

#include "asymp/asymptotic.hpp"
#include "asymp/ep_solver.hpp"
#include "asymp/oracle/oracle.hpp"
#include "asymp/sampling.hpp"

namespace {

using namespace asymp;

// Generic form (no fast path): psi(x, y) = <x + 0.3 sin(x), y - x>.
BifunctionModel Variational(std::size_t dim) {
  return BifunctionModel(
      dim,
      [](std::span<const double> x, std::span<const double> y) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] + 0.3 * std::sin(x[i])) * (y[i] - x[i]);
        return s;
      },
      FeasibleSet::Whole(dim), {}, "variational");
}

std::vector<Point> Grid(double h) { return StageGrid(FeasibleSet::Whole(2), 2.0, h); }

void BM_SolveOnGridParallel(benchmark::State& state) {
  const auto psi = Variational(2);
  const auto grid = Grid(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SolveOnGrid(psi, grid, 1e-9));
  state.counters["grid"] = static_cast<double>(grid.size());
}

void BM_EPOracleSerial(benchmark::State& state) {
  const auto psi = Variational(2);
  const auto grid = Grid(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::EPSolutionsOracle(psi, grid, 1e-9));
  state.counters["grid"] = static_cast<double>(grid.size());
}

FunctionModel ArctanNorm() {
  return FunctionModel::Radial(2, [](double r) { return ExtendedReal(std::atan(r)); },
                               FunctionTraits{.quasi_convex = true, .lsc = true, .bounded_below = true}, "arctan |x|");
}

void BM_SigmaGBatchParallel(benchmark::State& state) {
  const auto f = ArctanNorm();
  const auto dirs = UnitDirections(2, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(SigmaGSequentialBatch(f, dirs));
}

void BM_SigmaGSerialLoop(benchmark::State& state) {
  const auto f = ArctanNorm();
  const auto dirs = UnitDirections(2, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    for (const auto& u : dirs) benchmark::DoNotOptimize(SigmaGSequential(f, u));
  }
}

}  // namespace

BENCHMARK(BM_SolveOnGridParallel)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EPOracleSerial)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SigmaGBatchParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SigmaGSerialLoop)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
