// Acceptance criteria 1-9. One line per check; exit status is nonzero if any
// blocking check fails.

#include <iostream>

#include "gravlqu/selfcheck.hpp"

int main() {
  const gravlqu::SuiteReport report = gravlqu::run_acceptance_suite();
  gravlqu::print_report(report, std::cout);
  return report.passed() ? 0 : 1;
}
