#include "nlpm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlpm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_snapshot_csv(const std::string& path, const GridFunction& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (int k = 0; k < u.dim(); ++k) out << "x" << (k + 1) << ",";
  out << "u\n";
  for (std::int64_t i = 0; i < u.size(); ++i) {
    for (double x : u.coordinates(i)) out << format_double(x) << ",";
    out << format_double(u[i]) << "\n";
  }
}

namespace {

std::vector<double> parse_row(const std::string& line, const std::string& path,
                              size_t lineno) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    size_t consumed = 0;
    double v;
    try {
      v = std::stod(field, &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected a number, got \"" + field + "\"");
    }
    if (consumed != field.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": trailing characters in \"" + field + "\"");
    row.push_back(v);
  }
  return row;
}

}  // namespace

GridFunction read_snapshot_csv(const std::string& path, double h,
                               const GridBox& box, Boundary boundary) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");
  GridFunction u(h, box, boundary);
  std::int64_t i = 0;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (i >= u.size()) throw std::runtime_error(path + ": too many rows");
    std::vector<double> row = parse_row(line, path, lineno);
    if (static_cast<int>(row.size()) != u.dim() + 1)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": wrong column count");
    const std::vector<double> x = u.coordinates(i);
    for (int k = 0; k < u.dim(); ++k)
      if (std::abs(row[k] - x[k]) > 1e-12 * (1.0 + std::abs(x[k])))
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": coordinate mismatch");
    u[i] = row.back();
    ++i;
  }
  if (i != u.size()) throw std::runtime_error(path + ": too few rows");
  return u;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<StepRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "t,mass,linf,l1\n";
  for (const auto& r : records)
    out << format_double(r.t) << "," << format_double(r.mass) << ","
        << format_double(r.linf) << "," << format_double(r.l1) << "\n";
}

std::vector<StepRecord> read_diagnostics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "t,mass,linf,l1")
    throw std::runtime_error(path + ": bad diagnostics header");
  std::vector<StepRecord> records;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row = parse_row(line, path, lineno);
    if (row.size() != 4)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": wrong column count");
    records.push_back({row[0], row[1], row[2], row[3]});
  }
  return records;
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (size_t k = 0; k < columns.size(); ++k)
    out << columns[k] << (k + 1 < columns.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k)
      out << format_double(row[k]) << (k + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace nlpm
