// Experiment front end: solves, convergence studies, and the full
// property-verification suite, all driven by an INI config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlpm/csv.hpp"
#include "nlpm/experiment.hpp"
#include "nlpm/verify.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("--pairs entries need m:s, got \"" + item + "\"");
    out.push_back({std::stod(item.substr(0, colon)),
                   std::stod(item.substr(colon + 1))});
  }
  return out;
}

void print_sweep(const nlpm::SweepResult& result, const std::string& label) {
  for (const auto& row : result.rows) {
    std::printf("%s=%-12g", label.c_str(), row.parameter);
    if (row.second != 0.0) std::printf(" s=%-8g", row.second);
    std::printf(" l1_error=%.6e\n", row.error);
  }
  std::printf("monotone decrease: %s\n",
              result.monotone_decreasing ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal porous-medium solver and experiment harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string levels_arg, orders_arg, pairs_arg;
  std::uint64_t seed = 0;

  CLI::App* solve = app.add_subcommand("solve", "run a single solve");
  solve->add_option("config", config_path, "config file")->required();

  CLI::App* resolvent =
      app.add_subcommand("resolvent", "solve eps v - L_h v = g");
  resolvent->add_option("config", config_path, "config file")->required();

  CLI::App* conv_h = app.add_subcommand("converge-h", "grid refinement study");
  conv_h->add_option("config", config_path, "config file")->required();
  conv_h->add_option("--levels", levels_arg, "h values, comma separated")
      ->required();

  CLI::App* conv_s = app.add_subcommand("converge-s", "local limit study");
  conv_s->add_option("config", config_path, "config file")->required();
  conv_s->add_option("--orders", orders_arg, "s values increasing toward 2")
      ->required();

  CLI::App* cont = app.add_subcommand("cont-dep", "continuous dependence study");
  cont->add_option("config", config_path, "config file")->required();
  cont->add_option("--pairs", pairs_arg, "m:s entries, comma separated")
      ->required();

  CLI::App* verify = app.add_subcommand("verify", "run all property suites");
  verify->add_option("config", config_path, "config file")->required();
  verify->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    const nlpm::ExperimentConfig cfg = nlpm::load_config(config_path);

    if (solve->parsed()) {
      const nlpm::StencilWeights op = nlpm::make_operator(cfg);
      std::printf("stencil entries=%zu W=%g tail_mass=%g\n",
                  op.entries().size(), op.total_weight(), op.tail_mass());
      nlpm::RunReport report = nlpm::run_solve(cfg);
      std::printf("steps=%d dt=%g\n", report.steps, report.dt);
      const auto& last = report.records.back();
      std::printf("t=%g mass=%.12g linf=%.12g l1=%.12g\n", last.t, last.mass,
                  last.linf, last.l1);
      for (const auto& snap : report.snapshots)
        std::printf("support radius at t=%g: %g\n", snap.time,
                    nlpm::support_radius(snap.state));
      std::printf("wrote %s/diagnostics.csv and %zu snapshots\n",
                  cfg.output.dir.c_str(), report.snapshots.size());
      return 0;
    }
    if (resolvent->parsed()) {
      nlpm::ResolventResult r = nlpm::run_resolvent(cfg);
      std::printf("iterations=%d residual_linf=%.3e\n", r.iterations,
                  r.residual_linf);
      std::printf("wrote %s/resolvent_v.csv\n", cfg.output.dir.c_str());
      return 0;
    }
    if (conv_h->parsed()) {
      nlpm::SweepResult r = nlpm::run_converge_h(cfg, parse_list(levels_arg));
      print_sweep(r, "h");
      return r.monotone_decreasing ? 0 : 1;
    }
    if (conv_s->parsed()) {
      nlpm::SweepResult r = nlpm::run_converge_s(cfg, parse_list(orders_arg));
      print_sweep(r, "s");
      return r.monotone_decreasing ? 0 : 1;
    }
    if (cont->parsed()) {
      nlpm::SweepResult r =
          nlpm::run_continuous_dependence(cfg, parse_pairs(pairs_arg));
      print_sweep(r, "m");
      return r.monotone_decreasing ? 0 : 1;
    }
    if (verify->parsed()) {
      const auto verdicts = nlpm::run_verify(cfg, seed);
      const std::string text = nlpm::format_verdicts(verdicts);
      std::fputs(text.c_str(), stdout);
      std::filesystem::create_directories(cfg.output.dir);
      std::ofstream out(cfg.output.dir + "/verdicts.txt");
      out << text;
      return nlpm::all_passed(verdicts) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
