#pragma once

#include <string>
#include <vector>

#include "gravlqu/dense.hpp"

namespace gravlqu {

namespace tol {
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = 1e-12;
inline constexpr double kPsdReject = 1e-10;
inline constexpr double kStructure = 1e-12;
// An eigenvalue lambda with unit eigenvector v and
//   lambda <= kNoiseUlps * DBL_EPSILON * |v|^T |M| |v|
// is within what rounding each stored entry of M can change it by, and both
// square root routes treat it as zero.
inline constexpr double kNoiseUlps = 4.0;
}  // namespace tol

/// Storage shared by X-structured Hermitian matrices in the basis
/// |00>, |01>, |10>, |11>. Only the diagonal and the upper anti-diagonal are
/// kept: m41 = conj(a14) and m32 = conj(a23).
struct XEntries {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
  Complex a14{};
  Complex a23{};

  double trace() const { return d1 + d2 + d3 + d4; }
  // Off-diagonals real and non-negative.
  bool phase_normalized() const;
  bool all_finite() const;

  friend bool operator==(const XEntries&, const XEntries&) = default;
};

/// Two-qubit X-structured density matrix. Construction only rejects
/// non-finite entries; the physical invariants (unit trace, PSD blocks) are
/// checked by validate().
class XState {
 public:
  XState(double d1, double d2, double d3, double d4, Complex a14 = {},
         Complex a23 = {});
  explicit XState(const XEntries& e);

  static XState maximally_mixed();
  // (|00> + |11>)/sqrt(2)
  static XState bell_phi_plus();
  // cos(t)|00> + sin(t)|11>
  static XState pure_00_11(double t);

  const XEntries& entries() const { return e_; }
  double d1() const { return e_.d1; }
  double d2() const { return e_.d2; }
  double d3() const { return e_.d3; }
  double d4() const { return e_.d4; }
  Complex a14() const { return e_.a14; }
  Complex a23() const { return e_.a23; }

  friend bool operator==(const XState&, const XState&) = default;

 private:
  XEntries e_;
};

/// Square root of an XState. Same layout, trace in (0, 2].
class XRoot {
 public:
  explicit XRoot(const XEntries& e);

  const XEntries& entries() const { return e_; }
  XEntries squared() const;

 private:
  XEntries e_;
};

struct FanoBloch {
  double r00 = 0.0;
  double r03 = 0.0;
  double r30 = 0.0;
  double r11 = 0.0;
  double r22 = 0.0;
  double r33 = 0.0;
};

struct Violation {
  std::string invariant;  // "trace", "block PSD", "diagonal"
  double magnitude = 0.0;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidationReport validate(const XState& s);

/// Replaces a14, a23 by their moduli. This is a local unitary on each qubit
/// and leaves every correlation measure unchanged.
XState remove_phases(const XState& s);

/// Blockwise principal square root. Each 2x2 block M on {|00>,|11>} and
/// {|01>,|10>} maps to (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
/// A block with det or trace below -1e-10 throws NotPsdError; smaller
/// negative values are clipped, and so is a block eigenvalue at rounding
/// level (see tol::kNoiseUlps).
XRoot sqrt_xstate(const XState& s);

/// Nonvanishing Fano-Bloch components R_{mu nu} = Tr(M sigma_mu x sigma_nu).
/// The input must be phase-normalised; throws DomainError otherwise.
FanoBloch fano_bloch(const XEntries& m);
inline FanoBloch fano_bloch(const XState& s) { return fano_bloch(s.entries()); }
inline FanoBloch fano_bloch(const XRoot& r) { return fano_bloch(r.entries()); }

double purity(const XState& s);

DenseHermitian4 to_dense(const XEntries& m);
inline DenseHermitian4 to_dense(const XState& s) { return to_dense(s.entries()); }

/// Rejects (StructureError) any matrix whose off-X entries exceed 1e-12 in
/// modulus, naming the largest one.
XState from_dense(const DenseHermitian4& h);

double max_abs_diff(const XEntries& x, const XEntries& y);

}  // namespace gravlqu
