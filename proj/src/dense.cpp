#include "gravlqu/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gravlqu/errors.hpp"
#include "gravlqu/xstate.hpp"

namespace gravlqu {

namespace {

constexpr double kOffDiagonalTol = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const CMatrix4& m) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// Applies A <- G^dagger A G and V <- V G where G acts on the (p, q) plane as
//   [ c        s      ]
//   [ -s*conj(u)  c*conj(u) ]
// with u = A(p,q)/|A(p,q)|.  After the update A(p,q) vanishes.
void rotate(CMatrix4& a, CMatrix4& v, int p, int q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex u = apq / g;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * g);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * std::conj(u);
  const Complex gqq = c * std::conj(u);

  // A <- A G (columns p, q)
  for (int k = 0; k < 4; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  // A <- G^dagger A (rows p, q)
  for (int k = 0; k < 4; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (int k = 0; k < 4; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

// Double-double accumulator: hi + lo carries about twice the precision of a
// double. Products go in through fma so each term is captured exactly up to
// the final rounding of the third factor.
struct Accumulator {
  double hi = 0.0;
  double lo = 0.0;

  void add(double x) {
    const double s = hi + x;
    const double bb = s - hi;
    const double err = (hi - (s - bb)) + (x - bb);
    lo += err;
    hi = s + lo;
    lo -= hi - s;
  }

  // += a * b * c
  void add_product(double a, double b, double c) {
    const double p = a * b;
    const double ep = std::fma(a, b, -p);
    const double q = p * c;
    add(q);
    lo += std::fma(p, c, -q) + ep * c;
  }

  double value() const { return hi + lo; }
};

// v^dagger H v for a unit v. Plain double evaluation loses u * ||H|| to
// cancellation, which is all of a small eigenvalue's significance.
double rayleigh_quotient(const CMatrix4& h, const CMatrix4& v, int col) {
  Accumulator acc;
  for (int i = 0; i < 4; ++i) {
    const double a = v(i, col).real();
    const double b = v(i, col).imag();
    for (int j = 0; j < 4; ++j) {
      const double hr = h(i, j).real();
      const double hi = h(i, j).imag();
      const double c = v(j, col).real();
      const double d = v(j, col).imag();
      // Re(conj(v_i) H_ij v_j)
      acc.add_product(a, hr, c);
      acc.add_product(-a, hi, d);
      acc.add_product(b, hr, d);
      acc.add_product(b, hi, c);
    }
  }
  return acc.value();
}

// |v|^T |H| |v| scaled to the rounding level; see tol::kNoiseUlps.
double noise_level(const CMatrix4& h, const CMatrix4& v, int col) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::abs(v(i, col)) * std::abs(h(i, j)) * std::abs(v(j, col));
  return tol::kNoiseUlps * std::numeric_limits<double>::epsilon() * s;
}

}  // namespace

CMatrix4 CMatrix4::identity() {
  CMatrix4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix4 CMatrix4::adjoint() const {
  CMatrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

Complex CMatrix4::trace() const {
  return a[0] + a[5] + a[10] + a[15];
}

CMatrix4 operator*(const CMatrix4& x, const CMatrix4& y) {
  CMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

CMatrix4 operator-(const CMatrix4& x, const CMatrix4& y) {
  CMatrix4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

CMatrix4 operator+(const CMatrix4& x, const CMatrix4& y) {
  CMatrix4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

CMatrix4 operator*(Complex s, const CMatrix4& x) {
  CMatrix4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
  return r;
}

Complex trace_of_product(const CMatrix4& x, const CMatrix4& y) {
  Complex s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, i);
  return s;
}

double max_abs_diff(const CMatrix4& x, const CMatrix4& y) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

DenseHermitian4 DenseHermitian4::from_upper(const CMatrix4& m) {
  DenseHermitian4 h;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) h.set(i, j, m(i, j));
  return h;
}

DenseHermitian4 DenseHermitian4::diagonal(double d0, double d1, double d2, double d3) {
  DenseHermitian4 h;
  h.set(0, 0, d0);
  h.set(1, 1, d1);
  h.set(2, 2, d2);
  h.set(3, 3, d3);
  return h;
}

void DenseHermitian4::set(int i, int j, Complex z) {
  if (i == j) {
    m_(i, i) = z.real();
    return;
  }
  m_(i, j) = z;
  m_(j, i) = std::conj(z);
}

DenseHermitian4 DenseHermitian4::shifted(double c) const {
  DenseHermitian4 h = *this;
  for (int i = 0; i < 4; ++i) h.m_(i, i) += c;
  return h;
}

double DenseHermitian4::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : m_.a) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix4 EighResult::reconstruct() const {
  CMatrix4 d;
  for (int i = 0; i < 4; ++i) d(i, i) = values[i];
  return vectors * d * vectors.adjoint();
}

EighResult dense_eigh(const DenseHermitian4& h) {
  CMatrix4 a = h.matrix();
  CMatrix4 v = CMatrix4::identity();
  const double scale = std::max(1.0, h.frobenius_norm());

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off >= kOffDiagonalTol * scale) {
    if (sweep == kMaxSweeps) {
      std::ostringstream msg;
      msg << "dense_eigh: no convergence after " << kMaxSweeps
          << " sweeps (off-diagonal norm " << off << ")";
      throw ConvergenceError(msg.str(), off);
    }
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 4; ++q) rotate(a, v, p, q);
    ++sweep;
    off = off_diagonal_norm(a);
  }

  // The diagonal of the rotated matrix is accurate to u * ||H|| in absolute
  // terms; the Rayleigh quotient of the converged vectors is accurate to
  // roughly u * |lambda| + u^2 * ||H||.
  std::array<double, 4> lambda{};
  for (int k = 0; k < 4; ++k) lambda[k] = rayleigh_quotient(h.matrix(), v, k);

  std::array<int, 4> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return lambda[x] < lambda[y]; });

  EighResult out;
  out.sweeps = sweep;
  for (int k = 0; k < 4; ++k) {
    const int src = order[k];
    out.values[k] = lambda[src];

    int lead = 0;
    for (int i = 1; i < 4; ++i)
      if (std::abs(v(i, src)) > std::abs(v(lead, src))) lead = i;
    const Complex phase = std::conj(v(lead, src)) / std::abs(v(lead, src));
    for (int i = 0; i < 4; ++i) out.vectors(i, k) = v(i, src) * phase;
    out.vectors(lead, k) = out.vectors(lead, k).real();
  }
  return out;
}

DenseHermitian4 dense_sqrt(const DenseHermitian4& h) {
  const EighResult e = dense_eigh(h);
  CMatrix4 d;
  for (int i = 0; i < 4; ++i) {
    double lambda = e.values[i];
    if (lambda >= 0.0 && lambda <= noise_level(h.matrix(), e.vectors, i)) lambda = 0.0;
    if (lambda < 0.0) {
      if (lambda < -tol::kPsdReject) {
        std::ostringstream msg;
        msg << "dense_sqrt: eigenvalue " << lambda << " below -" << tol::kPsdReject;
        throw NotPsdError(msg.str());
      }
      lambda = 0.0;
    }
    d(i, i) = std::sqrt(lambda);
  }
  return DenseHermitian4::from_upper(e.vectors * d * e.vectors.adjoint());
}

}  // namespace gravlqu
