#include <benchmark/benchmark.h>

#include "dcalb/error_lsd.hpp"
#include "dcalb/lower_bound.hpp"
#include "dcalb/mc_oracle.hpp"
#include "dcalb/moments.hpp"

namespace {

const dcalb::GbmParams kParams{0.0658, 0.1690};

void BM_MomentsRecursive(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto dca = dcalb::InvestmentSchedule::dca(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcalb::moments_recursive(dca, kParams, k, 21));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MomentsRecursive)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_LowerBoundRecursive(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto dca = dcalb::InvestmentSchedule::dca(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcalb::lower_bound_recursive(dca, kParams, k));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowerBoundRecursive)->RangeMultiplier(8)->Range(64, 32768)->Complexity();

void BM_LowerBoundDcaClosed(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcalb::lower_bound_dca_closed(kParams, k));
  }
}
BENCHMARK(BM_LowerBoundDcaClosed)->Arg(50)->Arg(1000);

// One step of the default 11 x 801 (J, y) search.
void BM_LogErrorUpperBound(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto dca = dcalb::InvestmentSchedule::dca(k);
  const auto moments = dcalb::moments_recursive(dca, kParams, k, 21);
  const auto lb = dcalb::lower_bound_recursive(dca, kParams, k);
  const auto grid = dcalb::LogErrorGrid::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcalb::log_error_upper_bound(moments, lb, k, grid));
  }
}
BENCHMARK(BM_LogErrorUpperBound)->Arg(12)->Arg(50);

void BM_Simulate(benchmark::State& state) {
  dcalb::SimulationConfig config{.n_paths = static_cast<std::size_t>(state.range(0)),
                                 .seed = 42,
                                 .schedule = dcalb::InvestmentSchedule::dca(20),
                                 .params = kParams,
                                 .threads = static_cast<unsigned>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcalb::simulate(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}
BENCHMARK(BM_Simulate)->Args({10'000, 1})->Args({10'000, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
