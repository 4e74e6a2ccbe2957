#include <iostream>

#include "nin/verify.hpp"

int main() {
  const auto results = nin::run_acceptance_suite();
  nin::print_results(results, std::cout);
  int passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  std::cout << "acceptance: " << passed << "/" << results.size()
            << " criteria passed\n";
  return nin::all_passed(results) ? 0 : 1;
}
