#include <benchmark/benchmark.h>

#include <random>

#include "nlpm/stencil.hpp"

namespace {

using namespace nlpm;

GridFunction random_grid(double h, int n, int dim) {
  std::mt19937_64 gen(1);
  GridBox box(std::vector<int>(dim, 0), std::vector<int>(dim, n - 1));
  GridFunction u(h, box, Boundary::kPeriodic);
  for (std::int64_t i = 0; i < u.size(); ++i)
    u[i] = (gen() >> 11) * 0x1.0p-53;
  return u;
}

void BM_ApplyLocal1D(benchmark::State& state) {
  const double h = 0.01;
  Matrix sigma(1, 1);
  sigma(0, 0) = 1.0;
  StencilWeights w = assemble_local(sigma, h);
  GridFunction u = random_grid(h, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    GridFunction lu = apply(w, u);
    benchmark::DoNotOptimize(lu.data());
  }
  state.SetItemsProcessed(state.iterations() * u.size());
}
BENCHMARK(BM_ApplyLocal1D)->Arg(256)->Arg(1024)->Arg(4096);

void BM_ApplyFractional1D(benchmark::State& state) {
  const double h = 0.05;
  StencilWeights w = assemble_nonlocal(LevyMeasure::fractional_laplacian(1, 1.0),
                                       h, state.range(1) * h);
  GridFunction u = random_grid(h, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    GridFunction lu = apply(w, u);
    benchmark::DoNotOptimize(lu.data());
  }
  state.SetItemsProcessed(state.iterations() * u.size() *
                          static_cast<std::int64_t>(w.entries().size()));
}
BENCHMARK(BM_ApplyFractional1D)->Args({256, 32})->Args({256, 128})->Args({1024, 128});

void BM_AssembleFractional(benchmark::State& state) {
  LevyMeasure mu = LevyMeasure::fractional_laplacian(1, 0.5);
  const double h = 0.05;
  for (auto _ : state) {
    StencilWeights w = assemble_nonlocal(mu, h, state.range(0) * h);
    benchmark::DoNotOptimize(w.total_weight());
  }
}
BENCHMARK(BM_AssembleFractional)->Arg(32)->Arg(128);

void BM_Symbol(benchmark::State& state) {
  StencilWeights w = assemble_nonlocal(LevyMeasure::fractional_laplacian(1, 1.5),
                                       0.05, 3.0);
  std::vector<double> xi{17.0};
  for (auto _ : state) benchmark::DoNotOptimize(symbol(w, xi));
}
BENCHMARK(BM_Symbol);

}  // namespace
