#include "gravlqu/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gravlqu/errors.hpp"

namespace gravlqu {

namespace {

// tan(theta) = num/den. num = den = 0 only in the fully degenerate block and
// stands for theta = +-pi/4 there (see slopes()).
struct Slope {
  double num;
  double den;
};

double angle(Slope t) {
  if (t.den == 0.0) {
    if (t.num == 0.0) return 0.0;
    return std::copysign(std::numbers::pi / 2.0, t.num);
  }
  return std::atan(t.num / t.den);
}

// tan(theta1) = D/(b + r) = (r - b)/D and tan(theta2) = D/(b - r) = -(b + r)/D;
// pick whichever ratio avoids cancellation. Same for the |00>,|11> pair with
// b replaced by -(B + w). A block with b = D = 0 (or B + w = D = 0) is
// proportional to the identity; its basis is fixed as the Delta -> 0+ limit
// at b = 0, i.e. theta = +pi/4, -pi/4.
std::array<Slope, 4> slopes(const ModelParams& p) {
  p.check();
  const double d = p.delta;
  const double b = p.field_inhomo;
  const double x = p.field_uniform + p.omega_gap;
  const double r = std::hypot(b, d);
  const double big_r = std::hypot(x, d);
  std::array<Slope, 4> t{};
  if (r == 0.0) {
    t[0] = {1.0, 1.0};
    t[1] = {-1.0, 1.0};
  } else {
    t[0] = b >= 0.0 ? Slope{d, b + r} : Slope{r - b, d};
    t[1] = b <= 0.0 ? Slope{d, b - r} : Slope{-(b + r), d};
  }
  if (big_r == 0.0) {
    t[2] = {1.0, 1.0};
    t[3] = {-1.0, 1.0};
  } else {
    t[2] = x <= 0.0 ? Slope{d, big_r - x} : Slope{x + big_r, d};
    t[3] = x >= 0.0 ? Slope{d, -x - big_r} : Slope{x - big_r, d};
  }
  return t;
}

void require_finite_beta(const ThermalPoint& t, const char* what) {
  if (t.is_zero_temperature()) {
    std::ostringstream msg;
    msg << what << ": zero temperature has no finite beta";
    throw DomainError(msg.str());
  }
}

// Projector onto cos(t)|x> + sin(t)|y>, from tan(t) alone so that t = 0 and
// t = +-pi/2 give exact zeros.
struct Projector {
  double cc;
  double ss;
  double cs;
};

Projector projector(Slope t) {
  const double scale = std::max(std::abs(t.num), std::abs(t.den));
  const double n = t.num / scale;
  const double d = t.den / scale;
  const double norm = n * n + d * d;
  return {d * d / norm, n * n / norm, n * d / norm};
}

// Each block is w_hi I + (w_lo - w_hi) P_lo; the two projectors of a block
// sum to the identity.
XState assemble(const ModelParams& p, const std::array<double, 4>& w) {
  const std::array<Slope, 4> t = slopes(p);
  const Projector inner = projector(t[0]);
  const Projector outer = projector(t[2]);
  const double gi = w[0] - w[1];
  const double go = w[2] - w[3];
  return XState(w[3] + go * outer.cc, w[1] + gi * inner.cc, w[1] + gi * inner.ss,
                w[3] + go * outer.ss, go * outer.cs, gi * inner.cs);
}

}  // namespace

void ModelParams::check() const {
  if (!std::isfinite(omega_gap) || !std::isfinite(delta) ||
      !std::isfinite(field_uniform) || !std::isfinite(field_inhomo))
    throw DomainError("ModelParams: non-finite parameter");
}

ThermalPoint ThermalPoint::from_temperature(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("ThermalPoint: temperature must be finite and >= 0");
  if (t == 0.0) return zero_temperature();
  return ThermalPoint(1.0 / t, t, false);
}

ThermalPoint ThermalPoint::from_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw DomainError("ThermalPoint: beta must be finite and >= 0");
  const double t = beta == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / beta;
  return ThermalPoint(beta, t, false);
}

double Spectrum::min_energy() const {
  return *std::min_element(eps.begin(), eps.end());
}

DenseHermitian4 hamiltonian(const ModelParams& p) {
  const double x = p.field_uniform + p.omega_gap;
  const double b = p.field_inhomo;
  DenseHermitian4 h = DenseHermitian4::diagonal(x, -b, b, -x);
  h.set(0, 3, -p.delta);
  h.set(1, 2, -p.delta);
  return h;
}

Spectrum spectrum(const ModelParams& p) {
  const std::array<Slope, 4> t = slopes(p);
  const double r = std::hypot(p.field_inhomo, p.delta);
  const double big_r = std::hypot(p.field_uniform + p.omega_gap, p.delta);
  Spectrum s;
  s.eps = {-r, r, -big_r, big_r};
  for (int i = 0; i < 4; ++i) s.theta[i] = angle(t[i]);
  return s;
}

double log_partition_function(const ModelParams& p, const ThermalPoint& t) {
  require_finite_beta(t, "log_partition_function");
  const Spectrum s = spectrum(p);
  const double emin = s.min_energy();
  double sum = 0.0;
  for (double e : s.eps) sum += std::exp(-t.beta() * (e - emin));
  return -t.beta() * emin + std::log(sum);
}

double partition_function(const ModelParams& p, const ThermalPoint& t) {
  require_finite_beta(t, "partition_function");
  p.check();
  const double r = std::hypot(p.field_inhomo, p.delta);
  const double big_r = std::hypot(p.field_uniform + p.omega_gap, p.delta);
  return 2.0 * std::cosh(t.beta() * r) + 2.0 * std::cosh(t.beta() * big_r);
}

double partition_function_spectral(const ModelParams& p, const ThermalPoint& t) {
  require_finite_beta(t, "partition_function_spectral");
  double z = 0.0;
  for (double e : spectrum(p).eps) z += std::exp(-t.beta() * e);
  return z;
}

double partition_function_numeric(const ModelParams& p, const ThermalPoint& t) {
  require_finite_beta(t, "partition_function_numeric");
  p.check();
  double z = 0.0;
  for (double e : dense_eigh(hamiltonian(p)).values) z += std::exp(-t.beta() * e);
  return z;
}

BoltzmannWeights boltzmann_weights(const Spectrum& s, const ThermalPoint& t) {
  require_finite_beta(t, "boltzmann_weights");
  const double emin = s.min_energy();
  BoltzmannWeights bw;
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    bw.w[i] = std::exp(-t.beta() * (s.eps[i] - emin));
    sum += bw.w[i];
  }
  for (double& w : bw.w) w /= sum;
  return bw;
}

XState thermal_state(const ModelParams& p, const ThermalPoint& t) {
  if (t.is_zero_temperature()) return ground_state(p);
  const Spectrum s = spectrum(p);
  return assemble(p, boltzmann_weights(s, t).w);
}

XState thermal_state_definitional(const ModelParams& p, const ThermalPoint& t) {
  require_finite_beta(t, "thermal_state_definitional");
  p.check();
  const EighResult e = dense_eigh(hamiltonian(p));
  const double emin = e.values[0];
  CMatrix4 d;
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double w = std::exp(-t.beta() * (e.values[i] - emin));
    d(i, i) = w;
    sum += w;
  }
  const CMatrix4 rho = Complex(1.0 / sum) * (e.vectors * d * e.vectors.adjoint());
  return from_dense(DenseHermitian4::from_upper(rho));
}

XState ground_state(const ModelParams& p) {
  const Spectrum s = spectrum(p);
  const double emin = s.min_energy();
  std::array<double, 4> w{};
  double count = 0.0;
  for (int i = 0; i < 4; ++i)
    if (s.eps[i] == emin) {
      w[i] = 1.0;
      count += 1.0;
    }
  for (double& x : w) x /= count;
  return assemble(p, w);
}

}  // namespace gravlqu
