#pragma once

#include <array>
#include <complex>

namespace gravlqu {

using Complex = std::complex<double>;

// Plain 4x4 complex matrix, row-major. Used for eigenvectors and the
// intermediate products of the definitional checks.
struct CMatrix4 {
  std::array<Complex, 16> a{};

  Complex& operator()(int i, int j) { return a[4 * i + j]; }
  const Complex& operator()(int i, int j) const { return a[4 * i + j]; }

  static CMatrix4 identity();
  CMatrix4 adjoint() const;
  Complex trace() const;
};

CMatrix4 operator*(const CMatrix4& x, const CMatrix4& y);
CMatrix4 operator-(const CMatrix4& x, const CMatrix4& y);
CMatrix4 operator+(const CMatrix4& x, const CMatrix4& y);
CMatrix4 operator*(Complex s, const CMatrix4& x);

// Tr(x * y) without forming the product.
Complex trace_of_product(const CMatrix4& x, const CMatrix4& y);

double max_abs_diff(const CMatrix4& x, const CMatrix4& y);

/// 4x4 Hermitian matrix. Every write goes through set(), which mirrors the
/// conjugate into the transposed slot and drops the imaginary part on the
/// diagonal, so (i,j) == conj((j,i)) holds exactly at all times.
class DenseHermitian4 {
 public:
  DenseHermitian4() = default;

  // Builds from the upper triangle of `m` (the lower triangle is ignored).
  static DenseHermitian4 from_upper(const CMatrix4& m);
  static DenseHermitian4 diagonal(double d0, double d1, double d2, double d3);

  void set(int i, int j, Complex z);
  const Complex& operator()(int i, int j) const { return m_(i, j); }
  const CMatrix4& matrix() const { return m_; }

  DenseHermitian4 shifted(double c) const;  // H + c*I
  double frobenius_norm() const;

 private:
  CMatrix4 m_{};
};

struct EighResult {
  std::array<double, 4> values{};  // ascending
  CMatrix4 vectors{};              // column k is the eigenvector of values[k]
  int sweeps = 0;

  CMatrix4 reconstruct() const;  // V diag(values) V^dagger
};

/// Cyclic complex Jacobi. Each rotation first removes the phase of the
/// pivot, then applies a real Givens rotation. Stops when the off-diagonal
/// Frobenius norm drops below 1e-14 (relative to max(1, ||H||_F)). The
/// eigenvalues returned are compensated Rayleigh quotients of the converged
/// vectors, good to about u * |lambda| + u^2 * ||H||.
/// Eigenvectors are fixed up so that their largest-magnitude component
/// (lowest index on ties) is real and positive.
///
/// Throws ConvergenceError after 100 sweeps.
EighResult dense_eigh(const DenseHermitian4& h);

/// Principal square root via dense_eigh. Eigenvalues in [-1e-10, 0) and
/// those at rounding level (see tol::kNoiseUlps) are set to zero; anything
/// more negative throws NotPsdError.
DenseHermitian4 dense_sqrt(const DenseHermitian4& h);

}  // namespace gravlqu
