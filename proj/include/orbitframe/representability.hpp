#pragma once

// Deciding whether a finite family is (the truncation of) an orbit
// {T^n f_1} of a bounded operator, and reconstructing the only possible T.
//
// Truncation conventions:
//  * The mixed frame operator sum_k f_{k+1} <., g_k> stops at k = N-1; the
//    k = N term would need f_{N+1}, which is not part of the data.
//  * The kernel shift test only uses kernel vectors whose last coordinate
//    vanishes, since shifting any other vector references f_{N+1}.

#include <vector>

#include "orbitframe/frame.hpp"

namespace orbitframe {

struct RepresentabilityVerdict {
  Matrix candidate_t;
  std::vector<double> shift_residuals;  // entry j is ||T f_j - f_{j+1}||
  double max_shift_residual = 0.0;
  double kernel_invariance_residual = 0.0;
  double norm_t = 0.0;
  double norm_lo = 1.0;
  double norm_hi = 0.0;  // sqrt(B/A); +inf when the family has no lower bound
  bool representable = false;
};

/// T = sum_{k=1}^{N-1} f_{k+1} g_k*. Throws LengthMismatch unless G has the
/// same shape as F, and InvalidInput when N < 2.
Matrix candidate_operator(const VectorFamily& f, const VectorFamily& g, const Tolerance& tol = {});

/// Shift residuals of T against F. The verdict is representable iff the
/// largest residual is at most residual_atol * max_k ||f_k||.
RepresentabilityVerdict check_shift_property(const VectorFamily& f, const Matrix& t,
                                             const Tolerance& tol = {});

/// Candidate from the canonical dual, then check_shift_property.
RepresentabilityVerdict assess_representability(const VectorFamily& f, const Tolerance& tol = {});

/// Largest distance, over unit kernel vectors c with c_N = 0, from the right
/// shift (0, c_1, ..., c_{N-1}) to the kernel of the synthesis operator.
/// Returns 0 when no such kernel vector exists.
double kernel_shift_invariance(const VectorFamily& f, const Tolerance& tol = {});

/// ||T(G1) - T(G2)|| for two validated duals. A value above residual_atol
/// certifies that F is not representable. Throws NotADual on a bad proposal.
double dual_falsification(const VectorFamily& f, const VectorFamily& g1, const VectorFamily& g2,
                          const Tolerance& tol = {});

enum class NormRegime {
  kFiniteFamily,   // ||T|| >= 1 is reported only
  kCertifiedTail,  // truncation of an infinite family with certified tail
};

struct NormSandwich {
  double norm_t = 0.0;
  double upper = 0.0;  // sqrt(B/A)
  bool lo_ok = false;  // ||T|| >= 1 - equality_atol
  bool hi_ok = false;  // ||T|| <= sqrt(B/A) + equality_atol
  NormRegime regime = NormRegime::kFiniteFamily;

  /// The upper bound always; the lower bound only in the certified-tail regime.
  bool enforced_ok() const { return hi_ok && (regime == NormRegime::kFiniteFamily || lo_ok); }
};

/// Compares ||T|| with the bounds 1 <= ||T|| <= sqrt(B/A). Requires F to be a
/// full-span frame (InvalidInput otherwise).
NormSandwich norm_sandwich(const VectorFamily& f, const Matrix& t, const Tolerance& tol = {},
                           NormRegime regime = NormRegime::kFiniteFamily);

}  // namespace orbitframe
