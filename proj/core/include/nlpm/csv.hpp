#pragma once

#include <string>
#include <vector>

#include "nlpm/evolution.hpp"
#include "nlpm/grid_function.hpp"

namespace nlpm {

// Snapshot CSV: header x1,...,xN,u; one row per lattice point, row-major over
// the index box, 17 significant digits.
void write_snapshot_csv(const std::string& path, const GridFunction& u);

// Reads values written by write_snapshot_csv back onto the given lattice;
// row count and coordinates must match.
GridFunction read_snapshot_csv(const std::string& path, double h,
                               const GridBox& box, Boundary boundary);

// Diagnostics CSV: header t,mass,linf,l1.
void write_diagnostics_csv(const std::string& path,
                           const std::vector<StepRecord>& records);
std::vector<StepRecord> read_diagnostics_csv(const std::string& path);

// Generic numeric table with a caller-supplied header line.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

std::string format_double(double v);  // 17 significant digits, round-trip safe

}  // namespace nlpm
