#include <benchmark/benchmark.h>

#include "folia/series.hpp"

using namespace folia;

namespace {

Series2 dense(int order, long seed) {
  Series2 s(order);
  long v = seed;
  for (int d = 1; d <= order; ++d)
    for (int j = 0; j <= d; ++j) {
      v = (v * 48271) % 2147483647;
      s.set(d - j, j, Coefficient::fraction(v % 11 - 5, 1 + v % 4));
    }
  return s;
}

}  // namespace

void BM_series2_multiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Series2 a = dense(n, 7), b = dense(n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_series2_multiply)->Arg(6)->Arg(10)->Arg(14);

void BM_series2_compose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Series2 f = dense(n, 3);
  const Series2 u = Series2::x(n) + dense(n, 5).truncated(n) * Series2::x(n);
  const Series2 v = Series2::y(n) + dense(n, 13).truncated(n) * Series2::y(n);
  for (auto _ : state) benchmark::DoNotOptimize(compose2(f, u, v));
}
BENCHMARK(BM_series2_compose)->Arg(6)->Arg(10)->Arg(14);
BENCHMARK_MAIN();
