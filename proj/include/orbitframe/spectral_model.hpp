#pragma once

// Diagonal model frames: T = diag(lambda) with |lambda_k| < 1 acting on the
// canonical basis, generator phi_k = sqrt(1 - |lambda_k|^2). The orbit frame
// operator has a closed form (a geometric series per entry), and because T is
// normal, ||T^n|| = rho^n gives certified truncation depths.

#include <span>
#include <vector>

#include "orbitframe/frame.hpp"

namespace orbitframe {

class DiagonalModel {
 public:
  /// Throws ModulusOutOfRange if some |lambda_k| >= 1, InvalidInput if empty
  /// or non-finite.
  explicit DiagonalModel(std::vector<Complex> lambdas);

  const std::vector<Complex>& lambdas() const { return lambdas_; }
  Index dim() const { return static_cast<Index>(lambdas_.size()); }
  double spectral_radius() const { return spectral_radius_; }

  /// diag(lambda) as a dense matrix.
  Matrix operator_matrix() const;

 private:
  std::vector<Complex> lambdas_;
  double spectral_radius_ = 0.0;
};

struct CarlesonReport {
  std::vector<double> per_index_products;
  double infimum = 0.0;
  bool satisfied = false;
  bool has_duplicates = false;
};

/// prod_{j != k} |lambda_j - lambda_k| / |1 - lambda_j conj(lambda_k)| for
/// each k, and the minimum over k. `delta` is the threshold for `satisfied`.
CarlesonReport carleson_lower_bound(std::span<const Complex> lambdas, double delta = 1e-6);

/// lambda_k = 1 - alpha^{-k}, k = 1..d.
DiagonalModel sample_carleson_sequence(double alpha, Index d);

Vector generator(const DiagonalModel& model);

/// S_jk = phi_j conj(phi_k) / (1 - lambda_j conj(lambda_k)), the frame
/// operator of the full orbit {T^n phi}_{n >= 0}.
Matrix closed_form_frame_operator(const DiagonalModel& model);
Matrix closed_form_frame_operator(const DiagonalModel& model, const Vector& phi);

/// Smallest N >= 1 with norm_sq * rho^{2N} / (1 - rho^2) <= tail_tol.
/// Throws TailBoundUnreachable for rho >= 1.
Index certified_depth(double rho, double norm_sq, double tail_tol);

struct IteratedFrameOperator {
  Matrix s;
  Index depth = 0;
};

/// Partial sum of (T^n phi)(T^n phi)* up to the certified depth for tail_tol.
IteratedFrameOperator iterated_frame_operator(const DiagonalModel& model, double tail_tol);
IteratedFrameOperator iterated_frame_operator(const DiagonalModel& model, const Vector& phi,
                                              double tail_tol);

/// Orbit of the model generator truncated at the certified depth.
VectorFamily spectral_orbit(const DiagonalModel& model, double tail_tol);

/// phi with coordinate `ell` (1-based) set to zero.
Vector drop_component(const DiagonalModel& model, const Vector& phi, Index ell);

/// (1 - epsilon) T, for epsilon in (0, 1).
Matrix shrink_operator(const Matrix& t, double epsilon);

struct ShrinkTrendPoint {
  Index dim = 0;
  Index depth = 0;               // certified depth of the shrunk orbit
  double lower_bound = 0.0;      // lower frame bound of the shrunk orbit
  double original_lower = 0.0;   // same for the unshrunk Carleson model
};

/// Lower frame bounds of {((1-epsilon)T)^n phi} for the Carleson model
/// lambda_k = 1 - alpha^{-k} on increasingly many coordinates. Bounds at or
/// below the rank threshold are reported as 0.
std::vector<ShrinkTrendPoint> shrink_trend(double alpha, double epsilon, std::span<const Index> dims,
                                           double tail_tol, const Tolerance& tol = {});

}  // namespace orbitframe
