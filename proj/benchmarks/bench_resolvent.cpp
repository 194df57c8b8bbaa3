#include <benchmark/benchmark.h>

#include <random>

#include "nlpm/resolvent.hpp"

namespace {

using namespace nlpm;

void BM_SolveResolvent(benchmark::State& state) {
  const double h = 0.05;
  StencilWeights w = assemble_nonlocal(LevyMeasure::fractional_laplacian(1, 1.0),
                                       h, 3.0);
  std::mt19937_64 gen(2);
  GridFunction g(h, GridBox::interval(0, state.range(0) - 1),
                 Boundary::kPeriodic);
  for (std::int64_t i = 0; i < g.size(); ++i)
    g[i] = 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0;
  const double eps = 1.0;
  for (auto _ : state) {
    ResolventResult r = solve_resolvent(g, w, eps, 1e-10);
    benchmark::DoNotOptimize(r.residual_linf);
  }
}
BENCHMARK(BM_SolveResolvent)->Arg(64)->Arg(256);

}  // namespace
