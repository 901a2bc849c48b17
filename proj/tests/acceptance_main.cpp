#include <iostream>

#include "ckn/acceptance.hpp"

int main() {
  const auto outcome = ckn::acceptance::run_all(&std::cout);
  int failed = 0;
  for (const auto& r : outcome.criteria) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all 10 criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
