#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rabi {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

/// Runs the numbered acceptance checks; progress lines go to `log` when given.
std::vector<CriterionResult> run_acceptance(std::ostream* log = nullptr);

/// One "PASS"/"FAIL" line per criterion followed by a summary; returns the failure count.
int print_acceptance_report(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace rabi
