#pragma once

#include <array>
#include <cstdint>

#include "gravlqu/dense.hpp"
#include "gravlqu/xstate.hpp"

namespace gravlqu {

/// Unit vector n defining the local observable K = n . sigma (spectrum +-1).
class BlochVector {
 public:
  // Throws DomainError unless |n| = 1 within 1e-12.
  BlochVector(double x, double y, double z);
  // Normalises (x, y, z); throws DomainError for the zero vector.
  static BlochVector normalized(double x, double y, double z);
  static BlochVector from_angles(double polar, double azimuth);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  BlochVector operator-() const { return {-x_, -y_, -z_}; }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;

 private:
  double x_;
  double y_;
  double z_;
};

struct MinimizeConfig {
  int coarse_points = 512;  // Fibonacci lattice size, >= 128
  int refine_iters = 200;   // Nelder-Mead iteration cap, >= 50
  double refine_tol = 1e-9;

  void check() const;  // throws DomainError
};

struct SkewResult {
  double min_value = 0.0;
  BlochVector argmin{0.0, 0.0, 1.0};
  std::int64_t evaluations = 0;
  double lattice_min = 0.0;  // best value on the coarse lattice alone
};

struct WMatrix {
  std::array<std::array<double, 3>, 3> w{};
  std::array<double, 3> eigenvalues{};  // ascending
};

/// Precomputes sqrt(rho) once (dense route) and evaluates
///   I(rho, K x 1) = -1/2 Tr([sqrt(rho), K x 1]^2)
/// from the definition for any n.
class SkewEvaluator {
 public:
  explicit SkewEvaluator(const XState& s);

  double operator()(const BlochVector& n) const;
  const DenseHermitian4& root() const { return root_; }

 private:
  DenseHermitian4 root_;
};

double skew_information(const XState& s, const BlochVector& n);

/// Tr(rho K^2) - Tr(rho K)^2 with K = n . sigma x 1 (so Tr(rho K^2) = 1).
double variance(const XState& s, const BlochVector& n);

/// Brute-force minimum of the skew information over the Bloch sphere:
/// scan the Fibonacci lattice, then Nelder-Mead in a tangent chart around
/// the best lattice point (lowest index wins ties). Fully deterministic.
SkewResult minimize_skew(const XState& s, const MinimizeConfig& cfg = {});

/// W_lk = Tr(sqrt(rho) (sigma_l x 1) sqrt(rho) (sigma_k x 1)) from dense
/// products, plus its eigenvalues.
WMatrix w_numeric(const XState& s);

/// Fibonacci lattice point i of n.
BlochVector fibonacci_point(int i, int n);

/// Eigenvalues of a real symmetric 3x3 matrix (cyclic Jacobi), ascending.
std::array<double, 3> symmetric_eigenvalues3(std::array<std::array<double, 3>, 3> a);

}  // namespace gravlqu
