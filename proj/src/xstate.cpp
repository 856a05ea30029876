#include "gravlqu/xstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gravlqu/errors.hpp"

namespace gravlqu {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// a*d - |z|^2 with the rounding error of each product folded back in; the
// determinant of a nearly pure block is a difference of nearly equal terms.
double block_det(double a, double d, Complex z) {
  const double zr = z.real();
  const double zi = z.imag();
  const double p = a * d;
  const double ep = std::fma(a, d, -p);
  const double q1 = zr * zr;
  const double eq1 = std::fma(zr, zr, -q1);
  const double q2 = zi * zi;
  const double eq2 = std::fma(zi, zi, -q2);
  return ((p - q1) - q2) + (ep - eq1 - eq2);
}

struct Block {
  double a;
  double d;
  Complex z;
};

// `name` is only used in the error message.
Block block_sqrt(const Block& m, const char* name) {
  const double tr = m.a + m.d;
  double det = block_det(m.a, m.d, m.z);
  if (det < -tol::kPsdReject || tr < -tol::kPsdReject) {
    std::ostringstream msg;
    msg << "sqrt_xstate: block " << name << " is not PSD (trace " << tr
        << ", det " << det << ")";
    throw NotPsdError(msg.str());
  }
  // For the small eigenvector v, |v|^T |M| |v| = lambda_lo + 4 |z|^2 / gap.
  const double half_gap = std::hypot(0.5 * (m.a - m.d), std::abs(m.z));
  const double hi = 0.5 * tr + half_gap;
  if (hi > 0.0) {
    const double lo = det / hi;
    const double spread = half_gap > 0.0 ? 2.0 * std::norm(m.z) / half_gap : 0.0;
    const double noise = tol::kNoiseUlps * std::numeric_limits<double>::epsilon() *
                         (std::abs(lo) + spread);
    if (lo <= noise) det = 0.0;
  } else {
    det = 0.0;
  }
  const double s = std::sqrt(det);
  const double denom = tr + 2.0 * s;
  if (!(denom > 0.0)) return {0.0, 0.0, Complex{}};
  const double r = std::sqrt(denom);
  return {std::max(m.a + s, 0.0) / r, std::max(m.d + s, 0.0) / r, m.z / r};
}

}  // namespace

bool XEntries::phase_normalized() const {
  return a14.imag() == 0.0 && a23.imag() == 0.0 && a14.real() >= 0.0 &&
         a23.real() >= 0.0;
}

bool XEntries::all_finite() const {
  return std::isfinite(d1) && std::isfinite(d2) && std::isfinite(d3) &&
         std::isfinite(d4) && finite(a14) && finite(a23);
}

XState::XState(double d1, double d2, double d3, double d4, Complex a14, Complex a23)
    : XState(XEntries{d1, d2, d3, d4, a14, a23}) {}

XState::XState(const XEntries& e) : e_(e) {
  if (!e_.all_finite()) throw DomainError("XState: non-finite entry");
}

XState XState::maximally_mixed() { return XState(0.25, 0.25, 0.25, 0.25); }

XState XState::bell_phi_plus() { return XState(0.5, 0.0, 0.0, 0.5, 0.5, 0.0); }

XState XState::pure_00_11(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return XState(c * c, 0.0, 0.0, s * s, c * s, 0.0);
}

XRoot::XRoot(const XEntries& e) : e_(e) {
  if (!e_.all_finite()) throw DomainError("XRoot: non-finite entry");
}

XEntries XRoot::squared() const {
  const XEntries& t = e_;
  XEntries sq;
  sq.d1 = t.d1 * t.d1 + std::norm(t.a14);
  sq.d4 = t.d4 * t.d4 + std::norm(t.a14);
  sq.a14 = (t.d1 + t.d4) * t.a14;
  sq.d2 = t.d2 * t.d2 + std::norm(t.a23);
  sq.d3 = t.d3 * t.d3 + std::norm(t.a23);
  sq.a23 = (t.d2 + t.d3) * t.a23;
  return sq;
}

ValidationReport validate(const XState& s) {
  ValidationReport rep;
  const XEntries& e = s.entries();
  auto add = [&](std::string inv, double mag, std::string msg) {
    rep.ok = false;
    rep.violations.push_back({std::move(inv), mag, std::move(msg)});
  };

  const double tr = e.trace();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << "trace: " << tr << " != 1";
    add("trace", std::abs(tr - 1.0), msg.str());
  }

  const double diag[4] = {e.d1, e.d2, e.d3, e.d4};
  for (int i = 0; i < 4; ++i) {
    if (diag[i] < -tol::kPsd) {
      std::ostringstream msg;
      msg << "diagonal: d" << (i + 1) << " = " << diag[i] << " < 0";
      add("diagonal", -diag[i], msg.str());
    }
  }

  auto check_block = [&](double a, double d, Complex z) {
    const double lhs = a * d;
    const double rhs = std::norm(z);
    if (lhs < rhs - tol::kPsd) {
      std::ostringstream msg;
      msg << "block PSD: " << lhs << " < " << rhs;
      add("block PSD", rhs - lhs, msg.str());
    }
  };
  check_block(e.d1, e.d4, e.a14);
  check_block(e.d2, e.d3, e.a23);
  return rep;
}

XState remove_phases(const XState& s) {
  XEntries e = s.entries();
  e.a14 = std::abs(e.a14);
  e.a23 = std::abs(e.a23);
  return XState(e);
}

XRoot sqrt_xstate(const XState& s) {
  const XEntries& e = s.entries();
  const Block outer = block_sqrt({e.d1, e.d4, e.a14}, "{|00>,|11>}");
  const Block inner = block_sqrt({e.d2, e.d3, e.a23}, "{|01>,|10>}");
  XEntries r;
  r.d1 = outer.a;
  r.d4 = outer.d;
  r.a14 = outer.z;
  r.d2 = inner.a;
  r.d3 = inner.d;
  r.a23 = inner.z;
  return XRoot(r);
}

FanoBloch fano_bloch(const XEntries& m) {
  if (!m.phase_normalized())
    throw DomainError("fano_bloch: off-diagonals must be real and non-negative");
  const double m14 = m.a14.real();
  const double m23 = m.a23.real();
  FanoBloch f;
  f.r00 = m.trace();
  f.r03 = m.d1 - m.d2 + m.d3 - m.d4;
  f.r30 = m.d1 + m.d2 - m.d3 - m.d4;
  f.r33 = m.d1 - m.d2 - m.d3 + m.d4;
  f.r11 = 2.0 * (m23 + m14);
  f.r22 = 2.0 * (m23 - m14);
  return f;
}

double purity(const XState& s) {
  const XEntries& e = s.entries();
  return e.d1 * e.d1 + e.d2 * e.d2 + e.d3 * e.d3 + e.d4 * e.d4 +
         2.0 * std::norm(e.a14) + 2.0 * std::norm(e.a23);
}

DenseHermitian4 to_dense(const XEntries& m) {
  DenseHermitian4 h = DenseHermitian4::diagonal(m.d1, m.d2, m.d3, m.d4);
  h.set(0, 3, m.a14);
  h.set(1, 2, m.a23);
  return h;
}

XState from_dense(const DenseHermitian4& h) {
  int worst_i = -1;
  int worst_j = -1;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      const double mag = std::abs(h(i, j));
      if (mag > worst) {
        worst = mag;
        worst_i = i;
        worst_j = j;
      }
    }
  if (worst >= tol::kStructure) {
    std::ostringstream msg;
    msg << "from_dense: not X-structured, entry (" << worst_i + 1 << ","
        << worst_j + 1 << ") has modulus " << worst;
    throw StructureError(msg.str(), worst_i, worst_j, worst);
  }
  return XState(h(0, 0).real(), h(1, 1).real(), h(2, 2).real(), h(3, 3).real(),
                h(0, 3), h(1, 2));
}

double max_abs_diff(const XEntries& x, const XEntries& y) {
  return std::max({std::abs(x.d1 - y.d1), std::abs(x.d2 - y.d2),
                   std::abs(x.d3 - y.d3), std::abs(x.d4 - y.d4),
                   std::abs(x.a14 - y.a14), std::abs(x.a23 - y.a23)});
}

}  // namespace gravlqu
