#include "gravlqu/lqu.hpp"

#include <algorithm>
#include <cmath>

#include "gravlqu/errors.hpp"

namespace gravlqu {

namespace {

LquResult finish(const WEigenvalues& w, LquMode mode) {
  LquResult r;
  r.w = w;
  r.mode = mode;
  r.branch = w.w1 > w.w3 ? Branch::W1 : Branch::W3;
  // Rounding can push 1 - max(w1, w3) a few ulps outside [0, 1].
  r.value = std::clamp(1.0 - std::max(w.w1, w.w3), 0.0, 1.0);
  return r;
}

}  // namespace

std::string_view to_string(Branch b) { return b == Branch::W1 ? "w1" : "w3"; }

std::string_view to_string(LquMode m) { return m == LquMode::Exact ? "exact" : "paper"; }

WEigenvalues w_closed_form(const XRoot& root) {
  if (!root.entries().phase_normalized())
    throw DomainError("w_closed_form: root off-diagonals must be real and non-negative");
  const FanoBloch f = fano_bloch(root);
  const double r00 = f.r00 * f.r00;
  const double r33 = f.r33 * f.r33;
  const double r03 = f.r03 * f.r03;
  const double r30 = f.r30 * f.r30;
  const double r11 = f.r11 * f.r11;
  const double r22 = f.r22 * f.r22;
#ifdef GRAVLQU_MUTATE_W3_SIGN
  // Deliberately broken build used to prove the self-check catches errors.
  const double w3 = 0.25 * (r00 + r33 + r03 + r30 - r11 + r22);
#else
  const double w3 = 0.25 * (r00 + r33 + r03 + r30 - r11 - r22);
#endif
  return {0.25 * (r00 - r33 + r03 - r30 + r11 - r22),
          0.25 * (r00 - r33 + r03 - r30 - r11 + r22), w3};
}

LquResult lqu(const XState& s) {
  return finish(w_closed_form(sqrt_xstate(remove_phases(s))), LquMode::Exact);
}

LquResult lqu_paper_mode(const XState& s) {
  const XState n = remove_phases(s);
  const double r22 = n.d2();
  const double r33 = n.d3();
  const double r44 = n.d4();
  const double r23 = n.a23().real();
  const double r41 = n.a14().real();

  WEigenvalues w;
  w.w1 = -2.0 * (r33 * r33 + (r22 + r44 - 1.0) * r33 - 2.0 * r23 * r41 - r22 * r44);
  w.w3 = 2.0 * (r22 * (r33 + r44 - 1.0) + r22 * r22 + r33 * r33 + r44 * r44 + r33 * r44) -
         2.0 * r23 * r23 - 2.0 * r41 * r41 - 2.0 * r33 - 2.0 * r44 + 1.0;
  w.w2 = w.w1 - 8.0 * r23 * r41;
  return finish(w, LquMode::Paper);
}

double concurrence(const XState& s) {
  const XEntries& e = s.entries();
  auto root = [](double x) { return std::sqrt(std::max(x, 0.0)); };
  const double c1 = std::abs(e.a14) - root(e.d2 * e.d3);
  const double c2 = std::abs(e.a23) - root(e.d1 * e.d4);
  return 2.0 * std::max({0.0, c1, c2});
}

MeasureBundle compare_measures(const XState& s) {
  return {lqu(s).value, lqu_paper_mode(s).value, concurrence(s), purity(s)};
}

}  // namespace gravlqu
