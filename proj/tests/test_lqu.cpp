#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gravlqu/errors.hpp"
#include "gravlqu/lqu.hpp"
#include "gravlqu/model.hpp"
#include "gravlqu/oracle.hpp"

using namespace gravlqu;

namespace {

XState random_thermal(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> beta(0.05, 20.0);
  return thermal_state({u(rng), u(rng), u(rng), u(rng)}, ThermalPoint::from_beta(beta(rng)));
}

}  // namespace

TEST_CASE("w_closed_form") {
  const WEigenvalues mixed = w_closed_form(sqrt_xstate(XState::maximally_mixed()));
  CHECK(mixed.w1 == 1.0);
  CHECK(mixed.w2 == 1.0);
  CHECK(mixed.w3 == 1.0);

  const WEigenvalues bell = w_closed_form(sqrt_xstate(XState::bell_phi_plus()));
  CHECK(std::abs(bell.w1) < 1e-15);
  CHECK(std::abs(bell.w2) < 1e-15);
  CHECK(std::abs(bell.w3) < 1e-15);

  CHECK_THROWS_AS(w_closed_form(XRoot(XEntries{0.5, 0.0, 0.0, 0.5, -0.5, {}})), DomainError);
}

TEST_CASE("w_closed_form agrees with the entrywise expansion") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const XEntries t = sqrt_xstate(remove_phases(random_thermal(rng))).entries();
    const double t14 = t.a14.real();
    const double t23 = t.a23.real();
    const WEigenvalues w = w_closed_form(XRoot(t));
    CHECK(w.w1 == doctest::Approx(2.0 * (t.d1 * t.d3 + t.d2 * t.d4 + 2.0 * t14 * t23)).epsilon(1e-12));
    CHECK(w.w2 == doctest::Approx(2.0 * (t.d1 * t.d3 + t.d2 * t.d4 - 2.0 * t14 * t23)).epsilon(1e-12));
    const double tr2 = t.d1 * t.d1 + t.d2 * t.d2 + t.d3 * t.d3 + t.d4 * t.d4 + 2.0 * (t14 * t14 + t23 * t23);
    CHECK(std::abs(tr2 - 1.0) < 1e-12);
    CHECK(std::abs(w.w3 - (1.0 - 4.0 * (t14 * t14 + t23 * t23))) < 1e-12);
    CHECK(w.w1 >= w.w2);
  }
}

TEST_CASE("w_closed_form matches the definitional W") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    const XState s = remove_phases(random_thermal(rng));
    const WEigenvalues w = w_closed_form(sqrt_xstate(s));
    const WMatrix num = w_numeric(s);
    CHECK(std::abs(num.w[0][0] - w.w1) < 1e-10);
    CHECK(std::abs(num.w[1][1] - w.w2) < 1e-10);
    CHECK(std::abs(num.w[2][2] - w.w3) < 1e-10);
    CHECK(std::abs(num.w[0][1]) < 1e-10);
    CHECK(std::abs(num.w[0][2]) < 1e-10);
    CHECK(std::abs(num.w[1][2]) < 1e-10);
  }
}

TEST_CASE("lqu exact mode") {
  const LquResult mixed = lqu(XState::maximally_mixed());
  CHECK(mixed.value == 0.0);
  CHECK(mixed.branch == Branch::W3);  // w1 == w3 == 1, ties go to w3
  CHECK(mixed.mode == LquMode::Exact);

  CHECK(lqu(XState::bell_phi_plus()).value == doctest::Approx(1.0).epsilon(1e-15));

  const LquResult pure = lqu(XState::pure_00_11(std::numbers::pi / 6));
  CHECK(std::abs(pure.value - 0.75) < 1e-10);

  CHECK_THROWS_AS(lqu(XState(0.5, 0.0, 0.0, 0.5, 0.6)), NotPsdError);

  SUBCASE("phase invariance") {
    const XState s(0.4, 0.1, 0.15, 0.35, std::polar(0.2, 1.1), std::polar(0.05, -2.0));
    const LquResult a = lqu(s);
    const LquResult b = lqu(remove_phases(s));
    CHECK(a.value == b.value);
    CHECK(a.w.w1 == b.w.w1);
    CHECK(a.w.w3 == b.w.w3);
  }
  SUBCASE("value, range, and the max rule") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
      const LquResult r = lqu(random_thermal(rng));
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 1.0);
      CHECK(std::abs(r.value - (1.0 - std::max(r.w.w1, r.w.w3))) <= 1e-14);
      CHECK(r.branch == (r.w.w1 > r.w.w3 ? Branch::W1 : Branch::W3));
    }
  }
  SUBCASE("diagonal states carry none") {
    for (double beta : {0.1, 1.0, 10.0}) {
      const XState s = thermal_state({0.2, 0.0, -0.7, 1.3}, ThermalPoint::from_beta(beta));
      CHECK(std::abs(lqu(s).value) < 1e-15);
    }
  }
  SUBCASE("Delta parity") {
    const ModelParams p{0.05, 0.3, 0.5, -0.2};
    ModelParams q = p;
    q.delta = -p.delta;
    const ThermalPoint t = ThermalPoint::from_beta(1.5);
    CHECK(lqu(thermal_state(p, t)).value == lqu(thermal_state(q, t)).value);
  }
}

TEST_CASE("lqu paper mode") {
  // Polynomials on rho: at I/4 w1 = 0.25 and w3 = 4/16 = 0.25.
  const LquResult mixed = lqu_paper_mode(XState::maximally_mixed());
  CHECK(mixed.mode == LquMode::Paper);
  CHECK(mixed.w.w1 == 0.25);
  CHECK(mixed.w.w3 == 0.25);
  CHECK(mixed.value == 0.75);

  CHECK(lqu_paper_mode(XState::bell_phi_plus()).value == doctest::Approx(1.0).epsilon(1e-15));

  const XState pure = XState::pure_00_11(0.4);
  CHECK(std::abs(lqu_paper_mode(pure).value - lqu(pure).value) < 1e-9);

  const XState s = thermal_state({0.05, 0.05, 0.5, 0.5}, ThermalPoint::from_temperature(0.5));
  CHECK(std::abs(lqu_paper_mode(s).value - lqu(s).value) > 0.1);
}

TEST_CASE("paper-mode w1 equals its polynomial in rho22, rho33, rho44") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    const XEntries e = remove_phases(random_thermal(rng)).entries();
    const double r41 = e.a14.real();
    const double r23 = e.a23.real();
    const double expanded =
        -2.0 * (e.d3 * e.d3 + (e.d2 + e.d4 - 1.0) * e.d3 - 2.0 * r23 * r41 - e.d2 * e.d4);
    CHECK(std::abs(lqu_paper_mode(XState(e)).w.w1 - expanded) < 1e-12);
  }
}

TEST_CASE("concurrence") {
  CHECK(concurrence(XState::bell_phi_plus()) == doctest::Approx(1.0));
  CHECK(concurrence(XState::maximally_mixed()) == 0.0);
  CHECK(concurrence(XState::pure_00_11(std::numbers::pi / 6)) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

  const MeasureBundle m = compare_measures(XState::pure_00_11(std::numbers::pi / 6));
  CHECK(m.lqu_exact == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(m.lqu_paper == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(m.concurrence == doctest::Approx(0.8660254037844386));
  CHECK(m.purity == doctest::Approx(1.0));

  const MeasureBundle mixed = compare_measures(XState::maximally_mixed());
  CHECK(mixed.lqu_exact == 0.0);
  CHECK(mixed.concurrence == 0.0);
  CHECK(mixed.purity == 0.25);
}
