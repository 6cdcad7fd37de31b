#include <benchmark/benchmark.h>

#include "polyent/cohomology/growth.hpp"

using namespace polyent::cohomology;

namespace {

IntMatrix conjugated_jordan(std::size_t n) {
  IntMatrix p = IntMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) p(i, i + 1) = 2;
  return p * IntMatrix::jordan_block(n) * p.unimodular_inverse();
}

void BM_UnitCircleTest(benchmark::State& state) {
  const IntMatrix m = conjugated_jordan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unit_circle_test(characteristic_polynomial(m)).verdict);
}
BENCHMARK(BM_UnitCircleTest)->Arg(3)->Arg(6)->Arg(10);

void BM_GrowthProfile(benchmark::State& state) {
  const IntMatrix m = conjugated_jordan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(growth_profile(m).s);
}
BENCHMARK(BM_GrowthProfile)->Arg(3)->Arg(6)->Arg(10);

}  // namespace
