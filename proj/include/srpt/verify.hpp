#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srpt {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every module-invariant property suite by name and reports pass/fail.
// Monte-Carlo checks run at a reduced scale with the given seed; the
// acceptance binary runs the criterion-scale versions.
std::vector<CheckResult> run_verification(std::uint64_t seed, int threads);

}  // namespace srpt
