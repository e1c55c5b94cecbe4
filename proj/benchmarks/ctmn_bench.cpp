#include <benchmark/benchmark.h>

#include "wlanmab/ctmn.hpp"
#include "wlanmab/oracle.hpp"
#include "wlanmab/runner.hpp"

namespace {

using namespace wlanmab;

void BM_ThroughputGrid4(benchmark::State& state) {
  const Scenario s = build_scenario("grid4");
  const ctmn::JointProfile profile{{1, 2, 4, 5}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctmn::throughput(s, profile));
  }
}
BENCHMARK(BM_ThroughputGrid4);

void BM_OracleSweep(benchmark::State& state) {
  const Scenario s = build_scenario(state.range(0) == 2 ? "overlap2" : state.range(0) == 3 ? "line3" : "grid4");
  const auto active = oracle::all_wlans(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::exhaustive_maxmin(s, active));
  }
}
BENCHMARK(BM_OracleSweep)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SimulatorRun(benchmark::State& state) {
  runner::Simulator sim(build_scenario("grid4"), {});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.run(static_cast<std::size_t>(state.range(0)), seed++));
  }
}
BENCHMARK(BM_SimulatorRun)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
