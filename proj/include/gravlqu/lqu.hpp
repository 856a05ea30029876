#pragma once

#include <string_view>

#include "gravlqu/xstate.hpp"

namespace gravlqu {

/// Diagonal of the 3x3 matrix W_lk = Tr(sqrt(rho) sigma_l sqrt(rho) sigma_k)
/// (sigma acting on qubit A). W is diagonal for phase-normalised X states.
struct WEigenvalues {
  double w1 = 0.0;  // x
  double w2 = 0.0;  // y
  double w3 = 0.0;  // z
};

enum class Branch { W1, W3 };

// Exact: W built from sqrt(rho) (the true local quantum uncertainty).
// Paper: the same W formulas with the density-matrix elements substituted for
// the root elements. Not a skew-information minimum; see README.
enum class LquMode { Exact, Paper };

std::string_view to_string(Branch b);
std::string_view to_string(LquMode m);

struct LquResult {
  double value = 0.0;  // 1 - max(w1, w3)
  WEigenvalues w;
  Branch branch = Branch::W3;  // W3 on exact ties
  LquMode mode = LquMode::Exact;
};

/// Fano-Bloch route on the root (r00 = Tr sqrt(rho)):
///   w1 = (r00^2 - r33^2 + r03^2 - r30^2 + r11^2 - r22^2) / 4
///   w2 = (r00^2 - r33^2 + r03^2 - r30^2 - r11^2 + r22^2) / 4
///   w3 = (r00^2 + r33^2 + r03^2 + r30^2 - r11^2 - r22^2) / 4
/// Throws DomainError unless the root is phase-normalised.
WEigenvalues w_closed_form(const XRoot& root);

/// remove_phases -> sqrt_xstate -> w_closed_form -> 1 - max(w1, w3).
LquResult lqu(const XState& s);

/// W polynomials evaluated on the density-matrix elements (unit trace used
/// to eliminate rho11):
///   w1 = -2 (r33^2 + (r22 + r44 - 1) r33 - 2 r23 r41 - r22 r44)
///   w3 = 2 (r22 (r33 + r44 - 1) + r22^2 + r33^2 + r44^2 + r33 r44)
///        - 2 r23^2 - 2 r41^2 - 2 r33 - 2 r44 + 1
/// Equals lqu() only when sqrt(rho) = rho (pure states). Phases are removed
/// first; w2 comes from the same substitution into the Fano-Bloch form.
LquResult lqu_paper_mode(const XState& s);

/// 2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)}.
double concurrence(const XState& s);

struct MeasureBundle {
  double lqu_exact = 0.0;
  double lqu_paper = 0.0;
  double concurrence = 0.0;
  double purity = 0.0;
};

MeasureBundle compare_measures(const XState& s);

}  // namespace gravlqu
