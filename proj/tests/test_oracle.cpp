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

BlochVector random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return BlochVector::normalized(g(rng), g(rng), g(rng));
}

}  // namespace

TEST_CASE("BlochVector") {
  CHECK_THROWS_AS(BlochVector(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(BlochVector::normalized(0.0, 0.0, 0.0), DomainError);
  const BlochVector n = BlochVector::from_angles(std::numbers::pi / 2, 0.0);
  CHECK(n.x() == doctest::Approx(1.0));
  CHECK(std::abs(n.z()) < 1e-15);
}

TEST_CASE("MinimizeConfig limits") {
  CHECK_THROWS_AS((MinimizeConfig{100, 200, 1e-9}).check(), DomainError);
  CHECK_THROWS_AS((MinimizeConfig{512, 10, 1e-9}).check(), DomainError);
  CHECK_NOTHROW(MinimizeConfig{}.check());
}

TEST_CASE("skew_information") {
  const BlochVector z(0.0, 0.0, 1.0);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i)
    CHECK(std::abs(skew_information(XState::maximally_mixed(), random_direction(rng))) < 1e-15);
  CHECK(skew_information(XState::bell_phi_plus(), z) == doctest::Approx(1.0).epsilon(1e-14));

  const XState s = thermal_state({0.05, 0.3, 0.5, -0.2}, ThermalPoint::from_beta(2.0));
  for (int i = 0; i < 20; ++i) {
    const BlochVector n = random_direction(rng);
    CHECK(skew_information(s, n) == skew_information(s, -n));
  }
}

TEST_CASE("variance") {
  const BlochVector z(0.0, 0.0, 1.0);
  CHECK(variance(XState::bell_phi_plus(), z) == doctest::Approx(1.0));
  CHECK(variance(XState(1.0, 0.0, 0.0, 0.0), z) == 0.0);

  std::mt19937_64 rng(32);
  const XState pure = XState::pure_00_11(0.7);
  for (int i = 0; i < 50; ++i) {
    const BlochVector n = random_direction(rng);
    CHECK(std::abs(variance(pure, n) - skew_information(pure, n)) < 1e-10);
  }
}

TEST_CASE("skew information is 1 - n.W.n") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const XState s = thermal_state({u(rng), u(rng), u(rng), u(rng)},
                                   ThermalPoint::from_beta(std::abs(u(rng)) * 5.0 + 0.1));
    const BlochVector n = random_direction(rng);
    const WMatrix w = w_numeric(s);
    const double v[3] = {n.x(), n.y(), n.z()};
    double quad = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k) quad += v[l] * w.w[l][k] * v[k];
    CHECK(std::abs(skew_information(s, n) - (1.0 - quad)) < 1e-10);
    CHECK(std::abs(w.w[0][1] - w.w[1][0]) < 1e-12);
  }
}

TEST_CASE("w_numeric") {
  const WMatrix mixed = w_numeric(XState::maximally_mixed());
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) CHECK(std::abs(mixed.w[l][k] - (l == k ? 1.0 : 0.0)) < 1e-14);

  const WMatrix bell = w_numeric(XState::bell_phi_plus());
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) CHECK(std::abs(bell.w[l][k]) < 1e-14);
}

TEST_CASE("symmetric_eigenvalues3") {
  const auto e = symmetric_eigenvalues3({{{2.0, 1.0, 0.0}, {1.0, 2.0, 0.0}, {0.0, 0.0, 5.0}}});
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(3.0));
  CHECK(e[2] == doctest::Approx(5.0));
}

TEST_CASE("fibonacci lattice") {
  for (int i = 0; i < 512; i += 37) {
    const BlochVector p = fibonacci_point(i, 512);
    CHECK(std::abs(p.x() * p.x() + p.y() * p.y() + p.z() * p.z() - 1.0) < 1e-12);
  }
  CHECK(fibonacci_point(0, 512).z() > fibonacci_point(511, 512).z());
}

TEST_CASE("minimize_skew") {
  const SkewResult mixed = minimize_skew(XState::maximally_mixed());
  CHECK(std::abs(mixed.min_value) < 1e-14);

  const SkewResult bell = minimize_skew(XState::bell_phi_plus());
  CHECK(bell.min_value == doctest::Approx(1.0).epsilon(1e-12));
  for (const BlochVector& n : {BlochVector(1, 0, 0), BlochVector(0, 1, 0), BlochVector(0, 0, 1),
                               BlochVector(-1, 0, 0), BlochVector(0, -1, 0), BlochVector(0, 0, -1)})
    CHECK(skew_information(XState::bell_phi_plus(), n) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 40; ++i) {
    const XState s = thermal_state({u(rng), u(rng), u(rng), u(rng)},
                                   ThermalPoint::from_beta(std::abs(u(rng)) * 5.0 + 0.1));
    const SkewResult r = minimize_skew(s);
    const double exact = lqu(s).value;
    CHECK(std::abs(r.min_value - exact) < 2e-6);
    // Sandwich: lattice >= refined >= closed form - tol.
    CHECK(r.lattice_min >= r.min_value);
    CHECK(r.min_value >= exact - 2e-6);
    CHECK(r.evaluations > 512);
  }

  const XState s = thermal_state({0.05, 0.05, 0.5, 0.5}, ThermalPoint::from_temperature(0.5));
  const SkewResult a = minimize_skew(s);
  const SkewResult b = minimize_skew(s);
  CHECK(a.min_value == b.min_value);
  CHECK(a.argmin == b.argmin);
  CHECK(a.evaluations == b.evaluations);
}
