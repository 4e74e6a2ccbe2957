#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nin {

struct criterion_result {
  int index;
  std::string name;
  bool passed;
  std::string detail;  // counts, worst deviations, or the failure reason
  double seconds;
};

// The full acceptance suite: every criterion at its stated sizes, tolerances,
// and runtime bounds. Criteria never throw; failures land in the result.
std::vector<criterion_result> run_acceptance_suite();

// One "PASS|FAIL  <idx>/<total>  <name>  (<time>) <detail>" line per result.
void print_results(const std::vector<criterion_result>& results,
                   std::ostream& out);

bool all_passed(const std::vector<criterion_result>& results);

}  // namespace nin
