#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gravlqu/model.hpp"

namespace gravlqu {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool blocking = true;  // non-blocking checks are reported but never fail the suite
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  // fig4a at 100 steps, all curves concatenated; compared across runs.
  std::string determinism_csv;

  bool passed() const;
};

struct GridPoint {
  ModelParams params;
  double temperature = 0.0;
};

/// 200 points spread evenly through the product grid
/// {omega, Delta, B, b} in {-1, -0.3, 0, 0.05, 0.3, 1}^4 x T in {0.1, 0.5, 2, 10}.
std::vector<GridPoint> acceptance_grid();

/// 500 draws, each parameter uniform in [-2, 2], beta cycling through
/// {0.1, 0.5, 1, 5, 50}. Fixed-seed mt19937_64, so identical everywhere.
std::vector<std::pair<ModelParams, double>> random_draws(int count = 500);

/// Runs every acceptance criterion. Deterministic apart from the timings.
SuiteReport run_acceptance_suite();

void print_report(const SuiteReport& report, std::ostream& out);

}  // namespace gravlqu
