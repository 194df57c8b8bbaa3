#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlpm/grid_function.hpp"
#include "nlpm/levy_measure.hpp"
#include "nlpm/stencil.hpp"

namespace nlpm {

enum class MeasureType { kNone, kFractional, kDirac, kRadialExp };

struct MeasureConfig {
  MeasureType type = MeasureType::kNone;
  double s = 1.0;  // fractional order
  std::vector<double> atom_offsets;  // flattened dim-tuples
  std::vector<double> atom_masses;
  // radial_exp profile f(r) = coefficient * r^{-power} * exp(-decay r)
  double coefficient = 1.0;
  double power = 0.0;
  double decay = 1.0;
  double truncate_below = 0.0;  // inner truncation radius, 0 = none
  bool operator==(const MeasureConfig&) const = default;
};

struct LocalConfig {
  std::vector<std::vector<double>> sigma_columns;  // each of length grid.dim
  bool operator==(const LocalConfig&) const = default;
};

enum class NonlinearityType { kPower, kStefan, kLinear, kTable };

struct NonlinearityConfig {
  NonlinearityType type = NonlinearityType::kLinear;
  double m = 2.0;
  double c1 = 1.0, c2 = 1.0, latent = 1.0;
  double a = 1.0;
  std::vector<double> table_x, table_v;
  double mollify = 0.0;  // eta; 0 = mollify only when the CFL bound demands it
  bool operator==(const NonlinearityConfig&) const = default;
};

struct GridConfig {
  int dim = 1;
  double h = 0.05;
  std::vector<int> ilo{-128};
  std::vector<int> ihi{127};
  Boundary boundary = Boundary::kPeriodic;
  bool operator==(const GridConfig&) const = default;
};

enum class InitialType { kGaussian, kBump, kBarenblatt, kSpike, kConstant };

struct InitialConfig {
  InitialType type = InitialType::kBump;
  double height = 1.0;
  double width = 1.0;  // gaussian width or bump radius
  std::vector<double> center;  // empty = origin
  double t0 = 0.1;     // barenblatt start time
  double value = 0.0;  // constant
  bool operator==(const InitialConfig&) const = default;
};

struct TimeConfig {
  std::optional<double> dt;  // fixed step; must respect the CFL bound
  double theta = 0.9;        // CFL fraction when dt unset
  double t_final = 0.5;
  std::vector<double> snapshots;
  bool operator==(const TimeConfig&) const = default;
};

struct TruncationConfig {
  double r_cut = 10.0;
  TailPolicy tail = TailPolicy::kDrop;
  bool operator==(const TruncationConfig&) const = default;
};

struct ResolventSectionConfig {
  double epsilon = 1.0;
  double tol = 1e-10;
  bool operator==(const ResolventSectionConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  MeasureConfig measure;
  LocalConfig local;
  NonlinearityConfig nonlinearity;
  GridConfig grid;
  InitialConfig initial;
  TimeConfig time;
  TruncationConfig truncation;
  ResolventSectionConfig resolvent;
  OutputConfig output;
  bool operator==(const ExperimentConfig&) const = default;
};

// Flat INI: [section] headers and key = value lines, # comments. Unknown
// sections or keys are rejected; all errors carry 1-based line numbers.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical form; parse(serialize(c)) == c for every parseable c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace nlpm
