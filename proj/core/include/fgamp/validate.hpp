#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgamp/types.hpp"

namespace fgamp {

struct ValidationConfig {
  Eigen::Index max_size = 8;
  int trials = 100;
  std::uint64_t seed = 1;
  /// Self-test hook: negates the parity factor in a local copy of the
  /// tan-form matrix so the suite must flag the corruption.
  bool mutate_eq9_sign = false;
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Runs every cross-formula identity at the configured sizes: oracle
/// equivalence, tan/m path agreement, the -R phase identity, both recursion
/// variants, the shifted-pfaffian sum rules, the L=4 product relations, the
/// domain-wall route, probability path agreement and completeness, and the
/// spin-flip/theta-reflection symmetry.
std::vector<CheckResult> run_validation_suite(const ValidationConfig& config);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace fgamp
