#include <benchmark/benchmark.h>

#include <cmath>

#include "nlpm/evolution.hpp"

namespace {

using namespace nlpm;

void BM_StepExplicitPME(benchmark::State& state) {
  const double h = 0.025;
  Matrix sigma(1, 1);
  sigma(0, 0) = 1.0;
  StencilWeights w = assemble_local(sigma, h);
  const int n = static_cast<int>(state.range(0));
  GridFunction u = GridFunction::from_function(
      h, GridBox::interval(-n / 2, n / 2 - 1), Boundary::kZeroExtension,
      [](const std::vector<double>& x) {
        return std::max(0.0, 1.0 - x[0] * x[0]);
      });
  Nonlinearity phi = Nonlinearity::power(2.0);
  const double dt = 0.9 * cfl_dt(w, phi, u.linf_norm());
  for (auto _ : state) {
    u = step_explicit(u, w, phi, dt);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations() * u.size());
}
BENCHMARK(BM_StepExplicitPME)->Arg(256)->Arg(1024);

void BM_StepExplicitFractionalStefan(benchmark::State& state) {
  const double h = 0.05;
  StencilWeights w = assemble_nonlocal(LevyMeasure::fractional_laplacian(1, 1.0),
                                       h, 5.0);
  const int n = static_cast<int>(state.range(0));
  GridFunction u = GridFunction::from_function(
      h, GridBox::interval(-n / 2, n / 2 - 1), Boundary::kZeroExtension,
      [](const std::vector<double>& x) {
        return 2.0 * std::exp(-x[0] * x[0]);
      });
  Nonlinearity phi = Nonlinearity::stefan(1.0, 1.0, 1.0);
  const double dt = 0.9 * cfl_dt(w, phi, u.linf_norm());
  for (auto _ : state) {
    u = step_explicit(u, w, phi, dt);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations() * u.size());
}
BENCHMARK(BM_StepExplicitFractionalStefan)->Arg(256)->Arg(1024);

}  // namespace
