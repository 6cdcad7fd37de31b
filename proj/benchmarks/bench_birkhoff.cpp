#include <benchmark/benchmark.h>

#include "polyent/slow_growth/liouville.hpp"

using namespace polyent::slow_growth;

namespace {

const SlowSkew& strict() {
  static const SlowSkew s = SlowSkew::from_schedule(GapSchedule::with_log10_radius({1, 3, 104}, "0.1"));
  return s;
}

// Closed form is O(modes); direct summation is O(n).
void BM_BirkhoffClosed(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff_sum(strict(), 0.3, n, BirkhoffOf::G, Summation::Closed));
}
BENCHMARK(BM_BirkhoffClosed)->Arg(1000)->Arg(1000000);

void BM_BirkhoffDirect(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff_sum(strict(), 0.3, n, BirkhoffOf::G, Summation::Direct));
}
BENCHMARK(BM_BirkhoffDirect)->Arg(1000)->Arg(100000);

}  // namespace
