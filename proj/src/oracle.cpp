#include "gravlqu/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gravlqu/errors.hpp"

namespace gravlqu {

namespace {

using Vec3 = std::array<double, 3>;

// (n . sigma) x 1 in the basis |00>,|01>,|10>,|11>.
CMatrix4 local_observable(const BlochVector& n) {
  const Complex k00 = n.z();
  const Complex k01{n.x(), -n.y()};
  const Complex k10{n.x(), n.y()};
  const Complex k11 = -n.z();
  const Complex k[2][2] = {{k00, k01}, {k10, k11}};
  CMatrix4 m;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b) m(2 * a + b, 2 * ap + b) = k[a][ap];
  return m;
}

CMatrix4 pauli_on_a(int l) {
  switch (l) {
    case 0: return local_observable(BlochVector(1.0, 0.0, 0.0));
    case 1: return local_observable(BlochVector(0.0, 1.0, 0.0));
    default: return local_observable(BlochVector(0.0, 0.0, 1.0));
  }
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 unit(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

// Chart of the sphere around `origin`: (u, v) -> normalize(origin + u e1 + v e2).
class TangentChart {
 public:
  explicit TangentChart(const BlochVector& origin)
      : o_{origin.x(), origin.y(), origin.z()} {
    // Seed e1 with the coordinate axis least aligned with the origin.
    Vec3 axis{0.0, 0.0, 0.0};
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(o_[i]) < std::abs(o_[k])) k = i;
    axis[k] = 1.0;
    e1_ = unit(cross(o_, axis));
    e2_ = cross(o_, e1_);
  }

  BlochVector operator()(double u, double v) const {
    return BlochVector::normalized(o_[0] + u * e1_[0] + v * e2_[0],
                                   o_[1] + u * e1_[1] + v * e2_[1],
                                   o_[2] + u * e1_[2] + v * e2_[2]);
  }

 private:
  Vec3 o_;
  Vec3 e1_;
  Vec3 e2_;
};

struct Vertex {
  double u;
  double v;
  double f;
};

// Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2) on
// the chart. Stops when the value spread is below tol and the simplex is
// smaller than 1e-6, or after max_iters iterations.
template <class F>
Vertex nelder_mead(F&& f, double step, int max_iters, double tol, std::int64_t& evals) {
  auto eval = [&](double u, double v) {
    ++evals;
    return Vertex{u, v, f(u, v)};
  };
  std::array<Vertex, 3> s = {eval(0.0, 0.0), eval(step, 0.0), eval(0.0, step)};
  auto order = [&] {
    std::stable_sort(s.begin(), s.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  auto diameter = [&] {
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        d = std::max(d, std::hypot(s[i].u - s[j].u, s[i].v - s[j].v));
    return d;
  };

  order();
  for (int it = 0; it < max_iters; ++it) {
    if (s[2].f - s[0].f <= tol && diameter() < 1e-6) break;
    const double cu = 0.5 * (s[0].u + s[1].u);
    const double cv = 0.5 * (s[0].v + s[1].v);
    const Vertex r = eval(2.0 * cu - s[2].u, 2.0 * cv - s[2].v);
    if (r.f < s[0].f) {
      const Vertex e = eval(3.0 * cu - 2.0 * s[2].u, 3.0 * cv - 2.0 * s[2].v);
      s[2] = e.f < r.f ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      const bool outside = r.f < s[2].f;
      const Vertex c = outside
                           ? eval(0.5 * (cu + r.u), 0.5 * (cv + r.v))
                           : eval(0.5 * (cu + s[2].u), 0.5 * (cv + s[2].v));
      if (c.f < std::min(r.f, s[2].f)) {
        s[2] = c;
      } else {
        for (int i = 1; i < 3; ++i)
          s[i] = eval(0.5 * (s[0].u + s[i].u), 0.5 * (s[0].v + s[i].v));
      }
    }
    order();
  }
  return s[0];
}

}  // namespace

BlochVector::BlochVector(double x, double y, double z) : x_(x), y_(y), z_(z) {
  const double n2 = x * x + y * y + z * z;
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-12)
    throw DomainError("BlochVector: not a unit vector");
}

BlochVector BlochVector::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError("BlochVector: cannot normalise zero or non-finite vector");
  return BlochVector(x / n, y / n, z / n);
}

BlochVector BlochVector::from_angles(double polar, double azimuth) {
  return normalized(std::sin(polar) * std::cos(azimuth),
                    std::sin(polar) * std::sin(azimuth), std::cos(polar));
}

void MinimizeConfig::check() const {
  if (coarse_points < 128) throw DomainError("MinimizeConfig: coarse_points < 128");
  if (refine_iters < 50) throw DomainError("MinimizeConfig: refine_iters < 50");
  if (!(refine_tol > 0.0)) throw DomainError("MinimizeConfig: refine_tol must be > 0");
}

BlochVector fibonacci_point(int i, int n) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * i + 1.0) / n;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden_angle * i;
  return BlochVector::normalized(r * std::cos(phi), r * std::sin(phi), z);
}

SkewEvaluator::SkewEvaluator(const XState& s) : root_(dense_sqrt(to_dense(s))) {}

double SkewEvaluator::operator()(const BlochVector& n) const {
  const CMatrix4 k = local_observable(n);
  const CMatrix4& r = root_.matrix();
  const CMatrix4 c = r * k - k * r;
  const double value = -0.5 * trace_of_product(c, c).real();
  return value < 0.0 ? 0.0 : value;
}

double skew_information(const XState& s, const BlochVector& n) {
  return SkewEvaluator(s)(n);
}

double variance(const XState& s, const BlochVector& n) {
  const CMatrix4 rho = to_dense(s).matrix();
  const CMatrix4 k = local_observable(n);
  const double second = trace_of_product(rho, k * k).real();
  const double first = trace_of_product(rho, k).real();
  return std::max(0.0, second - first * first);
}

SkewResult minimize_skew(const XState& s, const MinimizeConfig& cfg) {
  cfg.check();
  const SkewEvaluator skew(s);

  SkewResult out;
  int best = 0;
  double best_value = 0.0;
  for (int i = 0; i < cfg.coarse_points; ++i) {
    const double v = skew(fibonacci_point(i, cfg.coarse_points));
    if (i == 0 || v < best_value) {
      best = i;
      best_value = v;
    }
  }
  out.evaluations = cfg.coarse_points;
  out.lattice_min = best_value;
  out.min_value = best_value;
  out.argmin = fibonacci_point(best, cfg.coarse_points);

  // Lattice spacing sets the first simplex; a second, smaller pass restarts
  // from the first result.
  double step = std::sqrt(4.0 * std::numbers::pi / cfg.coarse_points);
  for (int pass = 0; pass < 2; ++pass) {
    const TangentChart chart(out.argmin);
    const Vertex v = nelder_mead([&](double u, double w) { return skew(chart(u, w)); },
                                 step, cfg.refine_iters, cfg.refine_tol, out.evaluations);
    if (v.f < out.min_value) {
      out.min_value = v.f;
      out.argmin = chart(v.u, v.v);
    }
    step *= 0.1;
  }
  return out;
}

std::array<double, 3> symmetric_eigenvalues3(std::array<std::array<double, 3>, 3> a) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (int i = 0; i < 3; ++i) {
      diag += a[i][i] * a[i][i];
      for (int j = i + 1; j < 3; ++j) off += a[i][j] * a[i][j];
    }
    if (off <= 1e-32 * std::max(1.0, diag)) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
      }
  }
  std::array<double, 3> ev = {a[0][0], a[1][1], a[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

WMatrix w_numeric(const XState& s) {
  const CMatrix4 r = dense_sqrt(to_dense(s)).matrix();
  std::array<CMatrix4, 3> rs;
  std::array<CMatrix4, 3> ps;
  for (int l = 0; l < 3; ++l) {
    ps[l] = pauli_on_a(l);
    rs[l] = r * ps[l];
  }
  WMatrix out;
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) out.w[l][k] = trace_of_product(rs[l], rs[k]).real();
  out.eigenvalues = symmetric_eigenvalues3(out.w);
  return out;
}

}  // namespace gravlqu
