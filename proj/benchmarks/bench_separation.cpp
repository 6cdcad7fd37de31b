#include <benchmark/benchmark.h>

#include "polyent/cohomology/int_matrix.hpp"
#include "polyent/lab/bowen.hpp"
#include "polyent/lab/separation.hpp"
#include "polyent/zoo/system.hpp"

using namespace polyent;

namespace {

const zoo::DynSystem& shear() {
  static const zoo::DynSystem s = zoo::TorusAffineMap(cohomology::IntMatrix{{1, 1}, {0, 1}});
  return s;
}

// Greedy (n, eps)-separated count on a fixed pool; the workhorse of every estimate.
void BM_GreedySeparated(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pool = zoo::sample_points(shear(), static_cast<std::size_t>(state.range(1)), 7);
  for (auto _ : state) {
    auto r = lab::greedy_separated_count(shear(), pool, n, 0.1);
    benchmark::DoNotOptimize(r.sep_count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_GreedySeparated)->Args({16, 20000})->Args({128, 20000})->Args({512, 20000})->Unit(benchmark::kMillisecond);

void BM_BowenDistance(benchmark::State& state) {
  const auto pts = zoo::sample_points(shear(), 2, 3);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lab::bowen_distance(shear(), pts[0], pts[1], n));
}
BENCHMARK(BM_BowenDistance)->Arg(64)->Arg(1024);

}  // namespace
