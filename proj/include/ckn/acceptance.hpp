#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ckn::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct Outcome {
  std::vector<CriterionResult> criteria;
  nlohmann::json discrepancies = nlohmann::json::array();

  bool all_passed() const;
};

/// Runs the ten exit criteria in order. When `log` is non-null each result is
/// printed as it completes, one line per criterion.
Outcome run_all(std::ostream* log);

std::string format_line(const CriterionResult& result);

}  // namespace ckn::acceptance
