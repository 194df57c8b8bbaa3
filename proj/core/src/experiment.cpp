#include "nlpm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "nlpm/barenblatt.hpp"
#include "nlpm/csv.hpp"

namespace nlpm {

namespace {

std::string snapshot_filename(double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "snap_t%g.csv", t);
  return buf;
}

void write_run_files(const std::string& dir, const RunReport& report) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  write_diagnostics_csv(dir + "/diagnostics.csv", report.records);
  for (const auto& snap : report.snapshots)
    write_snapshot_csv(dir + "/" + snapshot_filename(snap.requested_time),
                       snap.state);
}

double l1_distance(const GridFunction& a, const GridFunction& b) {
  CompensatedSum s;
  for (std::int64_t i = 0; i < a.size(); ++i) s.add(std::abs(a[i] - b[i]));
  return s.value() * std::pow(a.h(), a.dim());
}

bool strictly_decreasing(const std::vector<SweepRow>& rows) {
  for (size_t k = 1; k < rows.size(); ++k)
    if (!(rows[k].error < rows[k - 1].error)) return false;
  return !rows.empty();
}

}  // namespace

std::optional<LevyMeasure> make_measure(const ExperimentConfig& config) {
  const auto& m = config.measure;
  std::optional<LevyMeasure> measure;
  switch (m.type) {
    case MeasureType::kNone:
      return std::nullopt;
    case MeasureType::kFractional:
      measure = LevyMeasure::fractional_laplacian(config.grid.dim, m.s);
      break;
    case MeasureType::kDirac: {
      if (m.atom_masses.empty())
        throw std::invalid_argument("dirac measure without atoms");
      if (m.atom_offsets.size() !=
          m.atom_masses.size() * static_cast<size_t>(config.grid.dim))
        throw std::invalid_argument("dirac atom offsets do not match grid dim");
      std::vector<DiracAtom> atoms;
      for (size_t k = 0; k < m.atom_masses.size(); ++k) {
        DiracAtom a;
        a.offset.assign(
            m.atom_offsets.begin() + k * config.grid.dim,
            m.atom_offsets.begin() + (k + 1) * config.grid.dim);
        a.mass = m.atom_masses[k];
        atoms.push_back(std::move(a));
      }
      measure = LevyMeasure::dirac_sum(std::move(atoms));
      break;
    }
    case MeasureType::kRadialExp: {
      const double coef = m.coefficient, p = m.power, lam = m.decay;
      measure = LevyMeasure::radial_density(
          config.grid.dim,
          [coef, p, lam](double r) {
            return coef * std::pow(r, -p) * std::exp(-lam * r);
          },
          p < config.grid.dim);
      break;
    }
  }
  if (m.truncate_below > 0.0)
    measure = LevyMeasure::truncated(std::move(*measure), m.truncate_below);
  return measure;
}

std::optional<StencilWeights> make_local_part(const ExperimentConfig& config) {
  if (config.local.sigma_columns.empty()) return std::nullopt;
  const int dim = config.grid.dim;
  Matrix sigma(dim, static_cast<int>(config.local.sigma_columns.size()));
  for (size_t j = 0; j < config.local.sigma_columns.size(); ++j) {
    const auto& col = config.local.sigma_columns[j];
    if (static_cast<int>(col.size()) != dim)
      throw std::invalid_argument("sigma column length does not match grid dim");
    for (int i = 0; i < dim; ++i) sigma(i, static_cast<int>(j)) = col[i];
  }
  return assemble_local(sigma, config.grid.h);
}

StencilWeights make_operator(const ExperimentConfig& config) {
  std::optional<LevyMeasure> measure = make_measure(config);
  std::optional<StencilWeights> local = make_local_part(config);
  std::optional<StencilWeights> nonlocal;
  if (measure) {
    nonlocal = assemble_nonlocal(*measure, config.grid.h, config.truncation.r_cut,
                                 config.truncation.tail);
  }
  if (local && nonlocal) {
    // Match tail policies so the sum is well-defined; the local part has no
    // tail to absorb.
    StencilWeights local_matched(local->dim(), local->h(), local->entries(), 0.0,
                                 config.truncation.tail);
    return StencilWeights::sum(local_matched, *nonlocal);
  }
  if (nonlocal) return *nonlocal;
  if (local)
    return StencilWeights(local->dim(), local->h(), local->entries(), 0.0,
                          config.truncation.tail);
  throw std::invalid_argument("config defines neither a measure nor a local part");
}

Nonlinearity make_nonlinearity(const ExperimentConfig& config, double sup_bound) {
  const auto& n = config.nonlinearity;
  Nonlinearity phi = [&] {
    switch (n.type) {
      case NonlinearityType::kPower:
        return Nonlinearity::power(n.m);
      case NonlinearityType::kStefan:
        return Nonlinearity::stefan(n.c1, n.c2, n.latent);
      case NonlinearityType::kLinear:
        return Nonlinearity::linear(n.a);
      case NonlinearityType::kTable:
        return Nonlinearity::monotone_table(n.table_x, n.table_v);
    }
    throw std::logic_error("unreachable");
  }();
  const double bound = std::max(sup_bound, 1e-12);
  double eta = n.mollify;
  if (eta <= 0.0 && std::isinf(phi.lipschitz_on(bound)))
    eta = 1e-2;  // fast diffusion must be mollified before explicit stepping
  if (eta > 0.0)
    phi = phi.mollify(eta, -(bound + 1.0), bound + 1.0);
  return phi;
}

GridFunction make_initial(const ExperimentConfig& config) {
  const auto& g = config.grid;
  if (static_cast<int>(g.ilo.size()) != g.dim ||
      static_cast<int>(g.ihi.size()) != g.dim)
    throw std::invalid_argument("grid index bounds do not match dim");
  GridBox box(g.ilo, g.ihi);
  const auto& init = config.initial;
  std::vector<double> center(g.dim, 0.0);
  if (!init.center.empty()) {
    if (static_cast<int>(init.center.size()) != g.dim)
      throw std::invalid_argument("initial center does not match grid dim");
    center = init.center;
  }
  auto shifted_sq = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (int k = 0; k < g.dim; ++k) s += (x[k] - center[k]) * (x[k] - center[k]);
    return s;
  };
  switch (init.type) {
    case InitialType::kGaussian:
      return GridFunction::from_function(
          g.h, box, g.boundary, [&](const std::vector<double>& x) {
            return init.height *
                   std::exp(-0.5 * shifted_sq(x) / (init.width * init.width));
          });
    case InitialType::kBump:
      return GridFunction::from_function(
          g.h, box, g.boundary, [&](const std::vector<double>& x) {
            const double t = shifted_sq(x) / (init.width * init.width);
            return t < 1.0 ? init.height * std::exp(1.0 - 1.0 / (1.0 - t)) : 0.0;
          });
    case InitialType::kBarenblatt:
      if (g.dim != 1)
        throw std::invalid_argument("barenblatt initial data is 1-D only");
      return GridFunction::from_function(
          g.h, box, g.boundary, [&](const std::vector<double>& x) {
            return barenblatt(config.nonlinearity.m, init.t0, x[0] - center[0]);
          });
    case InitialType::kSpike: {
      GridFunction u(g.h, box, g.boundary);
      std::vector<int> idx(g.dim);
      for (int k = 0; k < g.dim; ++k)
        idx[k] = static_cast<int>(std::llround(center[k] / g.h));
      u[u.flat_index(idx)] = init.height;
      return u;
    }
    case InitialType::kConstant:
      return GridFunction::from_function(
          g.h, box, g.boundary,
          [&](const std::vector<double>&) { return init.value; });
  }
  throw std::logic_error("unreachable");
}

EvolutionConfig make_time(const ExperimentConfig& config) {
  EvolutionConfig ev;
  ev.fixed_dt = config.time.dt;
  ev.cfl_fraction = config.time.theta;
  ev.t_final = config.time.t_final;
  ev.snapshot_times = config.time.snapshots;
  ev.boundary = config.grid.boundary;
  ev.tail_policy = config.truncation.tail;
  return ev;
}

RunReport run_solve(const ExperimentConfig& config, bool write_files) {
  GridFunction u0 = make_initial(config);
  StencilWeights op = make_operator(config);
  Nonlinearity phi = make_nonlinearity(config, u0.linf_norm());
  RunReport report = evolve(u0, op, phi, make_time(config));
  if (write_files) write_run_files(config.output.dir, report);
  return report;
}

ResolventResult run_resolvent(const ExperimentConfig& config, bool write_files) {
  GridFunction g = make_initial(config);
  StencilWeights op = make_operator(config);
  ResolventResult result =
      solve_resolvent(g, op, config.resolvent.epsilon, config.resolvent.tol);
  if (write_files) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output.dir);
    write_snapshot_csv(config.output.dir + "/resolvent_g.csv", g);
    write_snapshot_csv(config.output.dir + "/resolvent_v.csv", result.v);
  }
  return result;
}

namespace {

GridFunction final_state(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.time.snapshots = {c.time.t_final};
  RunReport r = run_solve(c, false);
  return r.snapshots.back().state;
}

}  // namespace

SweepResult run_converge_h(const ExperimentConfig& config,
                           const std::vector<double>& levels,
                           bool write_files) {
  if (levels.size() < 3)
    throw std::invalid_argument("converge-h needs at least 3 levels");
  const double h0 = config.grid.h;
  const double h_fine = levels.back();
  std::vector<ExperimentConfig> cfgs;
  for (double h : levels) {
    if (!(h > 0.0)) throw std::invalid_argument("levels must be positive");
    const double ratio = h / h_fine;
    if (std::abs(ratio - std::llround(ratio)) > 1e-9)
      throw std::invalid_argument("incompatible levels: " + format_double(h) +
                                  " is not an integer multiple of the finest");
    ExperimentConfig c = config;
    c.grid.h = h;
    c.grid.ilo.clear();
    c.grid.ihi.clear();
    const bool periodic = config.grid.boundary == Boundary::kPeriodic;
    for (int k = 0; k < config.grid.dim; ++k) {
      // Keep the physical box of the base config: corner-preserving for
      // zero extension, cell-preserving for the torus (so the period is
      // identical across levels).
      const double lo = config.grid.ilo[k] * h0;
      const double hi = (config.grid.ihi[k] + (periodic ? 1 : 0)) * h0;
      const double ilo = lo / h;
      const double ihi = hi / h - (periodic ? 1 : 0);
      if (std::abs(ilo - std::llround(ilo)) > 1e-9 ||
          std::abs(ihi - std::llround(ihi)) > 1e-9)
        throw std::invalid_argument("incompatible levels: box is not resolved by h = " +
                                    format_double(h));
      c.grid.ilo.push_back(static_cast<int>(std::llround(ilo)));
      c.grid.ihi.push_back(static_cast<int>(std::llround(ihi)));
    }
    cfgs.push_back(std::move(c));
  }

  std::vector<GridFunction> finals;
  for (const auto& c : cfgs) finals.push_back(final_state(c));

  SweepResult result;
  const GridFunction& fine = finals.back();
  for (size_t level = 0; level + 1 < finals.size(); ++level) {
    const GridFunction& coarse = finals[level];
    const int ratio = static_cast<int>(std::llround(coarse.h() / fine.h()));
    CompensatedSum err;
    for (std::int64_t i = 0; i < coarse.size(); ++i) {
      std::vector<int> idx = coarse.multi_index(i);
      for (int k = 0; k < coarse.dim(); ++k) idx[k] *= ratio;
      err.add(std::abs(coarse[i] - fine[fine.flat_index(idx)]));
    }
    result.rows.push_back(
        {coarse.h(), 0.0, err.value() * std::pow(coarse.h(), coarse.dim())});
  }
  result.monotone_decreasing = strictly_decreasing(result.rows);
  if (write_files) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output.dir);
    std::vector<std::vector<double>> rows;
    for (const auto& r : result.rows) rows.push_back({r.parameter, r.error});
    write_table_csv(config.output.dir + "/table.csv", {"h", "l1_error"}, rows);
  }
  return result;
}

SweepResult run_converge_s(const ExperimentConfig& config,
                           const std::vector<double>& orders,
                           bool write_files) {
  for (size_t k = 1; k < orders.size(); ++k)
    if (!(orders[k] > orders[k - 1]))
      throw std::invalid_argument("orders must increase toward 2");

  // Local reference: sigma = I, no measure.
  ExperimentConfig local_cfg = config;
  local_cfg.measure.type = MeasureType::kNone;
  local_cfg.local.sigma_columns.clear();
  for (int k = 0; k < config.grid.dim; ++k) {
    std::vector<double> e(config.grid.dim, 0.0);
    e[k] = 1.0;
    local_cfg.local.sigma_columns.push_back(std::move(e));
  }
  const GridFunction u_local = final_state(local_cfg);

  SweepResult result;
  for (double s : orders) {
    ExperimentConfig c = config;
    c.measure.type = MeasureType::kFractional;
    c.measure.s = s;
    c.local.sigma_columns.clear();
    const GridFunction u_s = final_state(c);
    result.rows.push_back({s, 0.0, l1_distance(u_s, u_local)});
  }
  result.monotone_decreasing = strictly_decreasing(result.rows);
  if (write_files) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output.dir);
    std::vector<std::vector<double>> rows;
    for (const auto& r : result.rows) rows.push_back({r.parameter, r.error});
    write_table_csv(config.output.dir + "/table.csv", {"s", "l1_distance"}, rows);
  }
  return result;
}

SweepResult run_continuous_dependence(
    const ExperimentConfig& config,
    const std::vector<std::pair<double, double>>& pairs, bool write_files) {
  ExperimentConfig target_cfg = config;
  target_cfg.measure.type = MeasureType::kFractional;
  target_cfg.nonlinearity.type = NonlinearityType::kPower;
  const GridFunction u_target = final_state(target_cfg);

  SweepResult result;
  for (const auto& [m, s] : pairs) {
    ExperimentConfig c = target_cfg;
    c.nonlinearity.m = m;
    c.measure.s = s;
    const GridFunction u = final_state(c);
    result.rows.push_back({m, s, l1_distance(u, u_target)});
  }
  result.monotone_decreasing = strictly_decreasing(result.rows);
  if (write_files) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output.dir);
    std::vector<std::vector<double>> rows;
    for (const auto& r : result.rows)
      rows.push_back({r.parameter, r.second, r.error});
    write_table_csv(config.output.dir + "/table.csv", {"m", "s", "l1_distance"},
                    rows);
  }
  return result;
}

double support_radius(const GridFunction& u, double threshold) {
  const double cut = threshold * u.linf_norm();
  if (cut == 0.0) return 0.0;
  double radius = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) <= cut) continue;
    double sup = 0.0;
    for (double x : u.coordinates(i)) sup = std::max(sup, std::abs(x));
    radius = std::max(radius, sup);
  }
  return radius;
}

double barenblatt_l1_error(const ExperimentConfig& config) {
  if (config.initial.type != InitialType::kBarenblatt)
    throw std::invalid_argument("barenblatt_l1_error needs barenblatt initial data");
  const GridFunction u = final_state(config);
  const double t = config.initial.t0 + config.time.t_final;
  const double m = config.nonlinearity.m;
  CompensatedSum err;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const double x = u.coordinates(i)[0];
    err.add(std::abs(u[i] - barenblatt(m, t, x)));
  }
  return err.value() * u.h();
}

}  // namespace nlpm
