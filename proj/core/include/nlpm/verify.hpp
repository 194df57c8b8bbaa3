#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlpm/config.hpp"

namespace nlpm {

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;  // measured quantities, offending seed on failure
};

// Runs every module's invariant and property suite with seeded randomness.
// Deterministic for a fixed seed. The config supplies the default grid and
// operator wiring for the evolution checks.
std::vector<Verdict> run_verify(const ExperimentConfig& config, std::uint64_t seed);

bool all_passed(const std::vector<Verdict>& verdicts);

// One line per verdict: "PASS name: detail" / "FAIL name: detail".
std::string format_verdicts(const std::vector<Verdict>& verdicts);

}  // namespace nlpm
