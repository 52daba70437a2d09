#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mbt/config.hpp"

namespace mbt {

struct CheckOutcome {
  bool passed = false;
  double value = 0.0;      ///< measured quantity
  double threshold = 0.0;  ///< bound it was compared against
  std::string detail;
};

struct Check {
  std::string name;   ///< "<module>.<property>"
  std::string claim;  ///< one-line statement of what is verified
  std::function<CheckOutcome(const RunConfig&)> run;
};

/// Every invariant the toolkit promises, in one list; the validate command
/// runs exactly this list.
const std::vector<Check>& check_registry();

struct ValidationSummary {
  int passed = 0;
  int failed = 0;
  double seconds = 0.0;
};

/// Runs every registered check, printing one PASS/FAIL line per check.
/// A check that throws counts as a failure.
ValidationSummary run_validation(const RunConfig& config, std::ostream& log);

}  // namespace mbt
