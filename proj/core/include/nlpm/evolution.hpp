#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlpm/grid_function.hpp"
#include "nlpm/nonlinearity.hpp"
#include "nlpm/stencil.hpp"

namespace nlpm {

// Time-stepping policy for the forward-Euler realization of
// d/dt u_h = L_h[phi(u_h)].
struct EvolutionConfig {
  std::optional<double> fixed_dt;    // must respect the CFL bound when set
  double cfl_fraction = 0.9;         // theta in (0,1], used when fixed_dt unset
  double t_final = 0.0;
  std::vector<double> snapshot_times;
  Boundary boundary = Boundary::kPeriodic;   // validated against u0
  TailPolicy tail_policy = TailPolicy::kDrop;  // validated against weights
  bool record_trace = false;  // keep every step's state (per-step estimates)
};

struct StepRecord {
  double t;
  double mass;
  double linf;
  double l1;
};

struct Snapshot {
  double requested_time;
  double time;  // nearest completed step
  GridFunction state;
};

struct RunReport {
  double h = 0.0;
  int dim = 0;
  double dt = 0.0;
  int steps = 0;
  std::vector<StepRecord> records;  // records.size() == steps + 1
  std::vector<Snapshot> snapshots;
  std::vector<GridFunction> trace;  // states u^0..u^n when record_trace
};

// Largest monotonicity-preserving time step 1/(Lip(phi,[−M,M]) * W_eff).
// Throws "mollify the nonlinearity first" when the Lipschitz bound is
// infinite.
double cfl_dt(const StencilWeights& weights, const Nonlinearity& phi, double sup_bound);

// One forward-Euler step u + dt * L_h[phi(u)]. Rejects dt above the CFL
// bound for the current sup norm of u (error, not a warning).
GridFunction step_explicit(const GridFunction& u, const StencilWeights& weights,
                           const Nonlinearity& phi, double dt);

// Repeated step_explicit to t_final with diagnostics each step and snapshots
// at the nearest completed steps. Aborts with the offending step index if
// the state stops being finite.
RunReport evolve(const GridFunction& u0, const StencilWeights& weights,
                 const Nonlinearity& phi, const EvolutionConfig& config);

struct EstimateVerdict {
  std::string name;
  bool applicable = true;
  bool pass = false;
  double measured = 0.0;  // worst violation or fitted constant
  double threshold = 0.0;
  std::string detail;
};

// Discrete realizations of the a priori estimates for a pair of runs on the
// same grid, stencil, nonlinearity and dt: L1+ contraction, comparison,
// L1 and Linf bounds, and the fitted time-regularity constant.
std::vector<EstimateVerdict> estimate_suite(const RunReport& run,
                                            const RunReport& hat_run);

}  // namespace nlpm
