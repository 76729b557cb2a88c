// Acceptance criteria, one PASS/FAIL line each. Exit status 1 if any fails.

#include <iostream>

#include "wong/acceptance.hpp"

int main(int argc, char** argv) {
  wong::AcceptanceOptions options;
  if (argc > 1) options.scratch = argv[1];
  const auto results = wong::run_acceptance(std::cout, options);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
