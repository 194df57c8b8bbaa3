#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlpm/config.hpp"
#include "nlpm/evolution.hpp"
#include "nlpm/resolvent.hpp"

namespace nlpm {

// Wiring from a parsed config to module objects. Each helper runs the
// corresponding constructor and so enforces that module's invariants.
std::optional<LevyMeasure> make_measure(const ExperimentConfig& config);
std::optional<StencilWeights> make_local_part(const ExperimentConfig& config);
// Local + nonlocal sum; at least one part must be present.
StencilWeights make_operator(const ExperimentConfig& config);
// Auto-mollifies fast-diffusion powers (and any phi with an infinite local
// Lipschitz bound) against the initial sup bound before time stepping.
Nonlinearity make_nonlinearity(const ExperimentConfig& config, double sup_bound);
GridFunction make_initial(const ExperimentConfig& config);
EvolutionConfig make_time(const ExperimentConfig& config);

// Full solve; when write_files is set, emits diagnostics.csv and
// snap_t<value>.csv under config.output.dir.
RunReport run_solve(const ExperimentConfig& config, bool write_files = true);

// Resolvent subcommand: solves eps v - L_h v = g with g = the configured
// initial data; writes resolvent_g.csv / resolvent_v.csv when requested.
ResolventResult run_resolvent(const ExperimentConfig& config, bool write_files = true);

struct SweepRow {
  double parameter = 0.0;   // h, s, or the pair index
  double second = 0.0;      // s_n for continuous dependence
  double error = 0.0;       // L1 distance
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool monotone_decreasing = false;
};

// Grid refinement study: L1 error at t_final of each level against the
// finest level on common lattice points. Levels must nest (integer ratios).
SweepResult run_converge_h(const ExperimentConfig& config,
                           const std::vector<double>& levels,
                           bool write_files = true);

// Fractional orders s -> 2^-: L1 distance at t_final to the sigma = I local
// run on the same grid.
SweepResult run_converge_s(const ExperimentConfig& config,
                           const std::vector<double>& orders,
                           bool write_files = true);

// Continuous dependence in (m, s): distance at t_final to the run with the
// config's own (m, s) as target.
SweepResult run_continuous_dependence(
    const ExperimentConfig& config,
    const std::vector<std::pair<double, double>>& pairs,
    bool write_files = true);

// L1 error of the t_final state against the exact Barenblatt profile started
// from t0 (1-D local PME accuracy study).
double barenblatt_l1_error(const ExperimentConfig& config);

// Largest |x|_inf over lattice points with |u| above threshold * ||u||_inf;
// 0 for identically vanishing u. Finite-propagation diagnostic for
// compactly supported runs.
double support_radius(const GridFunction& u, double threshold = 1e-12);

}  // namespace nlpm
