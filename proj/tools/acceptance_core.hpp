// The acceptance suite: one exact check per shipped guarantee, shared by
// the dedicated test binary and the CLI's `suite acceptance` subcommand.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stabaut::acceptance {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;  // populated on failure
};

std::vector<CriterionResult> run_all(std::uint64_t seed = 2024);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace stabaut::acceptance
