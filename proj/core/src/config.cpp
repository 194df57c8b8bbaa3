#include "nlpm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "nlpm/csv.hpp"

namespace nlpm {

namespace {

[[noreturn]] void fail(size_t line, const std::string& what) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, size_t line) {
  const std::string t = trim(s);
  size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &consumed);
  } catch (const std::exception&) {
    fail(line, "expected a number, got \"" + t + "\"");
  }
  if (consumed != t.size()) fail(line, "trailing characters in \"" + t + "\"");
  return v;
}

int parse_int(const std::string& s, size_t line) {
  const std::string t = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    fail(line, "expected an integer, got \"" + t + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

std::vector<double> parse_double_list(const std::string& s, size_t line) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_double(part, line));
  return out;
}

std::vector<int> parse_int_list(const std::string& s, size_t line) {
  std::vector<int> out;
  if (trim(s).empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, line));
  return out;
}

// "z1 .. zN : mass ; ..." atom list.
void parse_atoms(const std::string& s, size_t line, MeasureConfig* m) {
  m->atom_offsets.clear();
  m->atom_masses.clear();
  if (trim(s).empty()) return;
  for (const auto& entry : split(s, ';')) {
    const auto parts = split(entry, ':');
    if (parts.size() != 2) fail(line, "atom entries need \"offset : mass\"");
    std::stringstream ss(trim(parts[0]));
    std::string comp;
    while (ss >> comp) m->atom_offsets.push_back(parse_double(comp, line));
    m->atom_masses.push_back(parse_double(parts[1], line));
  }
}

std::string format_atoms(const MeasureConfig& m) {
  if (m.atom_masses.empty()) return "";
  const size_t dim = m.atom_offsets.size() / m.atom_masses.size();
  std::string out;
  for (size_t k = 0; k < m.atom_masses.size(); ++k) {
    if (k) out += "; ";
    for (size_t c = 0; c < dim; ++c) {
      if (c) out += " ";
      out += format_double(m.atom_offsets[k * dim + c]);
    }
    out += " : " + format_double(m.atom_masses[k]);
  }
  return out;
}

void parse_sigma(const std::string& s, size_t line, LocalConfig* local) {
  local->sigma_columns.clear();
  if (trim(s).empty() || trim(s) == "none") return;
  for (const auto& col : split(s, ';')) {
    std::vector<double> column;
    std::stringstream ss(trim(col));
    std::string comp;
    while (ss >> comp) column.push_back(parse_double(comp, line));
    if (column.empty()) fail(line, "empty sigma column");
    local->sigma_columns.push_back(std::move(column));
  }
}

std::string format_sigma(const LocalConfig& local) {
  if (local.sigma_columns.empty()) return "none";
  std::string out;
  for (size_t k = 0; k < local.sigma_columns.size(); ++k) {
    if (k) out += "; ";
    for (size_t c = 0; c < local.sigma_columns[k].size(); ++c) {
      if (c) out += " ";
      out += format_double(local.sigma_columns[k][c]);
    }
  }
  return out;
}

template <typename T>
std::string join_list(const std::vector<T>& v,
                      const std::function<std::string(const T&)>& fmt) {
  std::string out;
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += fmt(v[k]);
  }
  return out;
}

std::string format_doubles(const std::vector<double>& v) {
  return join_list<double>(v, [](const double& x) { return format_double(x); });
}

std::string format_ints(const std::vector<int>& v) {
  return join_list<int>(v, [](const int& x) { return std::to_string(x); });
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      const std::vector<std::string> known = {
          "measure", "local", "nonlinearity", "grid", "initial",
          "time", "truncation", "resolvent", "output"};
      if (std::find(known.begin(), known.end(), section) == known.end())
        fail(line, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) fail(line, "key outside any section");

    if (section == "measure") {
      if (key == "type") {
        if (value == "none") cfg.measure.type = MeasureType::kNone;
        else if (value == "fractional") cfg.measure.type = MeasureType::kFractional;
        else if (value == "dirac") cfg.measure.type = MeasureType::kDirac;
        else if (value == "radial_exp") cfg.measure.type = MeasureType::kRadialExp;
        else fail(line, "unknown measure type \"" + value + "\"");
      } else if (key == "s") cfg.measure.s = parse_double(value, line);
      else if (key == "atoms") parse_atoms(value, line, &cfg.measure);
      else if (key == "coefficient") cfg.measure.coefficient = parse_double(value, line);
      else if (key == "power") cfg.measure.power = parse_double(value, line);
      else if (key == "decay") cfg.measure.decay = parse_double(value, line);
      else if (key == "truncate_below") cfg.measure.truncate_below = parse_double(value, line);
      else fail(line, "unknown key \"" + key + "\" in [measure]");
    } else if (section == "local") {
      if (key == "sigma") parse_sigma(value, line, &cfg.local);
      else fail(line, "unknown key \"" + key + "\" in [local]");
    } else if (section == "nonlinearity") {
      if (key == "type") {
        if (value == "power") cfg.nonlinearity.type = NonlinearityType::kPower;
        else if (value == "stefan") cfg.nonlinearity.type = NonlinearityType::kStefan;
        else if (value == "linear") cfg.nonlinearity.type = NonlinearityType::kLinear;
        else if (value == "table") cfg.nonlinearity.type = NonlinearityType::kTable;
        else fail(line, "unknown nonlinearity type \"" + value + "\"");
      } else if (key == "m") cfg.nonlinearity.m = parse_double(value, line);
      else if (key == "c1") cfg.nonlinearity.c1 = parse_double(value, line);
      else if (key == "c2") cfg.nonlinearity.c2 = parse_double(value, line);
      else if (key == "latent") cfg.nonlinearity.latent = parse_double(value, line);
      else if (key == "a") cfg.nonlinearity.a = parse_double(value, line);
      else if (key == "table_x") cfg.nonlinearity.table_x = parse_double_list(value, line);
      else if (key == "table_v") cfg.nonlinearity.table_v = parse_double_list(value, line);
      else if (key == "mollify") cfg.nonlinearity.mollify = parse_double(value, line);
      else fail(line, "unknown key \"" + key + "\" in [nonlinearity]");
    } else if (section == "grid") {
      if (key == "dim") cfg.grid.dim = parse_int(value, line);
      else if (key == "h") cfg.grid.h = parse_double(value, line);
      else if (key == "ilo") cfg.grid.ilo = parse_int_list(value, line);
      else if (key == "ihi") cfg.grid.ihi = parse_int_list(value, line);
      else if (key == "boundary") {
        if (value == "periodic") cfg.grid.boundary = Boundary::kPeriodic;
        else if (value == "zero") cfg.grid.boundary = Boundary::kZeroExtension;
        else fail(line, "unknown boundary \"" + value + "\"");
      } else fail(line, "unknown key \"" + key + "\" in [grid]");
    } else if (section == "initial") {
      if (key == "type") {
        if (value == "gaussian") cfg.initial.type = InitialType::kGaussian;
        else if (value == "bump") cfg.initial.type = InitialType::kBump;
        else if (value == "barenblatt") cfg.initial.type = InitialType::kBarenblatt;
        else if (value == "spike") cfg.initial.type = InitialType::kSpike;
        else if (value == "constant") cfg.initial.type = InitialType::kConstant;
        else fail(line, "unknown initial type \"" + value + "\"");
      } else if (key == "height") cfg.initial.height = parse_double(value, line);
      else if (key == "width") cfg.initial.width = parse_double(value, line);
      else if (key == "center") cfg.initial.center = parse_double_list(value, line);
      else if (key == "t0") cfg.initial.t0 = parse_double(value, line);
      else if (key == "value") cfg.initial.value = parse_double(value, line);
      else fail(line, "unknown key \"" + key + "\" in [initial]");
    } else if (section == "time") {
      if (key == "dt") cfg.time.dt = parse_double(value, line);
      else if (key == "theta") cfg.time.theta = parse_double(value, line);
      else if (key == "t_final") cfg.time.t_final = parse_double(value, line);
      else if (key == "snapshots") cfg.time.snapshots = parse_double_list(value, line);
      else fail(line, "unknown key \"" + key + "\" in [time]");
    } else if (section == "truncation") {
      if (key == "r_cut") cfg.truncation.r_cut = parse_double(value, line);
      else if (key == "tail") {
        if (value == "drop") cfg.truncation.tail = TailPolicy::kDrop;
        else if (value == "absorb") cfg.truncation.tail = TailPolicy::kAbsorb;
        else fail(line, "unknown tail policy \"" + value + "\"");
      } else fail(line, "unknown key \"" + key + "\" in [truncation]");
    } else if (section == "resolvent") {
      if (key == "epsilon") cfg.resolvent.epsilon = parse_double(value, line);
      else if (key == "tol") cfg.resolvent.tol = parse_double(value, line);
      else fail(line, "unknown key \"" + key + "\" in [resolvent]");
    } else if (section == "output") {
      if (key == "dir") cfg.output.dir = value;
      else fail(line, "unknown key \"" + key + "\" in [output]");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[measure]\n";
  switch (c.measure.type) {
    case MeasureType::kNone: out << "type = none\n"; break;
    case MeasureType::kFractional: out << "type = fractional\n"; break;
    case MeasureType::kDirac: out << "type = dirac\n"; break;
    case MeasureType::kRadialExp: out << "type = radial_exp\n"; break;
  }
  out << "s = " << format_double(c.measure.s) << "\n";
  out << "atoms = " << format_atoms(c.measure) << "\n";
  out << "coefficient = " << format_double(c.measure.coefficient) << "\n";
  out << "power = " << format_double(c.measure.power) << "\n";
  out << "decay = " << format_double(c.measure.decay) << "\n";
  out << "truncate_below = " << format_double(c.measure.truncate_below) << "\n";

  out << "\n[local]\n";
  out << "sigma = " << format_sigma(c.local) << "\n";

  out << "\n[nonlinearity]\n";
  switch (c.nonlinearity.type) {
    case NonlinearityType::kPower: out << "type = power\n"; break;
    case NonlinearityType::kStefan: out << "type = stefan\n"; break;
    case NonlinearityType::kLinear: out << "type = linear\n"; break;
    case NonlinearityType::kTable: out << "type = table\n"; break;
  }
  out << "m = " << format_double(c.nonlinearity.m) << "\n";
  out << "c1 = " << format_double(c.nonlinearity.c1) << "\n";
  out << "c2 = " << format_double(c.nonlinearity.c2) << "\n";
  out << "latent = " << format_double(c.nonlinearity.latent) << "\n";
  out << "a = " << format_double(c.nonlinearity.a) << "\n";
  out << "table_x = " << format_doubles(c.nonlinearity.table_x) << "\n";
  out << "table_v = " << format_doubles(c.nonlinearity.table_v) << "\n";
  out << "mollify = " << format_double(c.nonlinearity.mollify) << "\n";

  out << "\n[grid]\n";
  out << "dim = " << c.grid.dim << "\n";
  out << "h = " << format_double(c.grid.h) << "\n";
  out << "ilo = " << format_ints(c.grid.ilo) << "\n";
  out << "ihi = " << format_ints(c.grid.ihi) << "\n";
  out << "boundary = "
      << (c.grid.boundary == Boundary::kPeriodic ? "periodic" : "zero") << "\n";

  out << "\n[initial]\n";
  switch (c.initial.type) {
    case InitialType::kGaussian: out << "type = gaussian\n"; break;
    case InitialType::kBump: out << "type = bump\n"; break;
    case InitialType::kBarenblatt: out << "type = barenblatt\n"; break;
    case InitialType::kSpike: out << "type = spike\n"; break;
    case InitialType::kConstant: out << "type = constant\n"; break;
  }
  out << "height = " << format_double(c.initial.height) << "\n";
  out << "width = " << format_double(c.initial.width) << "\n";
  out << "center = " << format_doubles(c.initial.center) << "\n";
  out << "t0 = " << format_double(c.initial.t0) << "\n";
  out << "value = " << format_double(c.initial.value) << "\n";

  out << "\n[time]\n";
  if (c.time.dt) out << "dt = " << format_double(*c.time.dt) << "\n";
  out << "theta = " << format_double(c.time.theta) << "\n";
  out << "t_final = " << format_double(c.time.t_final) << "\n";
  out << "snapshots = " << format_doubles(c.time.snapshots) << "\n";

  out << "\n[truncation]\n";
  out << "r_cut = " << format_double(c.truncation.r_cut) << "\n";
  out << "tail = "
      << (c.truncation.tail == TailPolicy::kDrop ? "drop" : "absorb") << "\n";

  out << "\n[resolvent]\n";
  out << "epsilon = " << format_double(c.resolvent.epsilon) << "\n";
  out << "tol = " << format_double(c.resolvent.tol) << "\n";

  out << "\n[output]\n";
  out << "dir = " << c.output.dir << "\n";
  return out.str();
}

}  // namespace nlpm
