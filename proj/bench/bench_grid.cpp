// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "poslab/grid.hpp"
#include "poslab/semialg.hpp"

using namespace poslab;

namespace {

const Polynomial& objective() {
  static const Polynomial f = parse_polynomial("x1^4 - 3*x1^2*x2 + x2^3 - 0.5*x1*x2 + x2", 2);
  return f;
}

const SemialgebraicSystem& disk() {
  static const SemialgebraicSystem s(2, {parse_polynomial("1 - x1^2 - x2^2", 2)});
  return s;
}

GridSpec spec(int points) {
  GridSpec g = GridSpec::defaults(2);
  g.points_per_axis = points;
  g.refinement_rounds = 0;
  return g;
}

void BM_GridMin(benchmark::State& state, Execution exec) {
  const GridSpec g = spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_min(objective(), disk(), g, kDefaultFeasibilityTol, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_FeasiblePoints(benchmark::State& state, Execution exec) {
  const GridSpec g = spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(feasible_grid_points(disk(), g, kDefaultFeasibilityTol, exec));
}

void BM_NearestDistances(benchmark::State& state, Execution exec) {
  const std::vector<double> targets = feasible_grid_points(disk(), spec(static_cast<int>(state.range(0))));
  std::vector<double> queries;
  for (int i = 0; i < 500; ++i) {
    queries.push_back(-1.0 + 2.0 * i / 499.0);
    queries.push_back(1.0 - 2.0 * ((i * 37) % 500) / 499.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(nearest_distances(queries, targets, 2, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_GridMin, serial, Execution::serial)->Arg(201)->Arg(1001);
BENCHMARK_CAPTURE(BM_GridMin, parallel, Execution::parallel)->Arg(201)->Arg(1001);
BENCHMARK_CAPTURE(BM_FeasiblePoints, serial, Execution::serial)->Arg(1001);
BENCHMARK_CAPTURE(BM_FeasiblePoints, parallel, Execution::parallel)->Arg(1001);
BENCHMARK_CAPTURE(BM_NearestDistances, serial, Execution::serial)->Arg(101);
BENCHMARK_CAPTURE(BM_NearestDistances, parallel, Execution::parallel)->Arg(101);

BENCHMARK_MAIN();
