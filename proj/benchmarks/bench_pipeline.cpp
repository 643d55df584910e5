#include <benchmark/benchmark.h>

#include "folia/named_forms.hpp"
#include "folia/normal_forms.hpp"
#include "folia/numerics.hpp"

using namespace folia;

void BM_dulac_prenormalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PlanarVectorField model = make_named(NamedForm::formal_model(1, Coefficient::fraction(2, 3)), n);
  const Series2 x = Series2::x(n), y = Series2::y(n);
  const CoordinateChange phi(x + x * y * Coefficient::fraction(1, 2), y + x * x - y * y * y);
  const PlanarVectorField X = pullback(model, phi);
  for (auto _ : state) benchmark::DoNotOptimize(dulac_prenormalize(X, n - 3));
}
BENCHMARK(BM_dulac_prenormalize)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_holonomy_jet(benchmark::State& state) {
  const int jet = static_cast<int>(state.range(0));
  const PlanarVectorField X =
      make_named(NamedForm::ecalle2(Series1(3, {0, Coefficient::fraction(1, 5), Coefficient::fraction(1, 10)})), 6);
  const PathSpec loop = PathSpec::circle(1);
  for (auto _ : state) benchmark::DoNotOptimize(holonomy_jet(X, loop, jet));
}
BENCHMARK(BM_holonomy_jet)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
