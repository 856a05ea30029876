#pragma once

#include <array>

#include "gravlqu/dense.hpp"
#include "gravlqu/xstate.hpp"

namespace gravlqu {

/// Two coupled gravitational cat qubits in a magnetic field with uniform
/// part B and inhomogeneity b. All quantities are dimensionless.
struct ModelParams {
  double omega_gap = 0.0;       // level splitting of each cat
  double delta = 0.0;           // gravitational coupling
  double field_uniform = 0.0;   // B
  double field_inhomo = 0.0;    // b

  // Throws DomainError on NaN/Inf.
  void check() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Inverse temperature with k_B = 1. Zero temperature is represented
/// explicitly rather than as beta = inf.
class ThermalPoint {
 public:
  static ThermalPoint from_temperature(double t);
  static ThermalPoint from_beta(double beta);
  static ThermalPoint zero_temperature() { return ThermalPoint(0.0, 0.0, true); }

  bool is_zero_temperature() const { return zero_; }
  // Only meaningful when !is_zero_temperature().
  double beta() const { return beta_; }
  double temperature() const { return temperature_; }

 private:
  ThermalPoint(double beta, double t, bool zero)
      : beta_(beta), temperature_(t), zero_(zero) {}
  double beta_;
  double temperature_;
  bool zero_;
};

/// eps1,2 = -/+ sqrt(b^2 + D^2) on span{|01>,|10>} with eigenvectors
/// cos(theta)|01> + sin(theta)|10>; eps3,4 = -/+ sqrt((B+w)^2 + D^2) on
/// span{|00>,|11>} with eigenvectors cos(theta)|00> + sin(theta)|11>.
struct Spectrum {
  std::array<double, 4> eps{};
  std::array<double, 4> theta{};

  double min_energy() const;
};

/// Normalised Boltzmann weights e^{-beta eps_i} / Z, computed with the
/// exponents shifted by eps_min.
struct BoltzmannWeights {
  std::array<double, 4> w{};
};

DenseHermitian4 hamiltonian(const ModelParams& p);

Spectrum spectrum(const ModelParams& p);

/// Z = 2 cosh(beta sqrt(b^2+D^2)) + 2 cosh(beta sqrt((B+w)^2+D^2)).
/// Overflows to +inf for very large beta; use log_partition_function there.
/// Both throw DomainError at zero temperature.
double partition_function(const ModelParams& p, const ThermalPoint& t);
double log_partition_function(const ModelParams& p, const ThermalPoint& t);

// sum_i exp(-beta eps_i) over the analytic spectrum.
double partition_function_spectral(const ModelParams& p, const ThermalPoint& t);
// sum_i exp(-beta lambda_i) over dense_eigh(hamiltonian(p)).
double partition_function_numeric(const ModelParams& p, const ThermalPoint& t);

BoltzmannWeights boltzmann_weights(const Spectrum& s, const ThermalPoint& t);

/// Gibbs state from the closed-form eigensystem. Zero temperature is
/// forwarded to ground_state().
XState thermal_state(const ModelParams& p, const ThermalPoint& t);

/// exp(-beta H)/Z via dense_eigh, converted through from_dense. Independent
/// of the angle formulas used by thermal_state. Requires T > 0.
XState thermal_state_definitional(const ModelParams& p, const ThermalPoint& t);

/// beta -> infinity limit: uniform mixture of every level at eps_min (a pure
/// state unless the ground level is degenerate).
XState ground_state(const ModelParams& p);

}  // namespace gravlqu
