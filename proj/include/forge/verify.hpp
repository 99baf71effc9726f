#pragma once

#include "forge/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace forge::verify {

struct Config {
  std::vector<std::string> only;       // empty: every suite
  std::optional<std::uint32_t> q_max;  // extra cap on every suite's field bound
  std::uint64_t seed = 1;
  std::size_t random_instances = 1000;
  bool inject_cross_ratio_mutant = false;
};

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string witness;  // first violation, human readable
  std::vector<std::string> findings;  // recorded, not violations
  Rational measured;  // suite-specific headline number (covering: worst constant)
  long long millis = 0;

  bool ok() const { return violations == 0; }
};

/// Suite names in run order.
const std::vector<std::string>& suite_names();

/// Runs one suite by name. Throws invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, const Config& cfg);

/// Runs the selected suites in order, calling `progress` after each.
std::vector<SuiteResult> run_all(const Config& cfg,
                                 const std::function<void(const SuiteResult&)>& progress = {});

}  // namespace forge::verify
