#pragma once

// Dense complex linear algebra shared by every other module. All rank
// decisions in the library go through numerical_rank() so that a single
// relative threshold controls kernel dimensions, chain lengths and subspace
// dimensions.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace orbitframe {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds, threaded explicitly through every operation.
struct Tolerance {
  double rank_rtol = 1e-9;      // relative to the largest singular value
  double residual_atol = 1e-8;  // identity / shift residuals
  double equality_atol = 1e-8;  // comparisons of reported scalars

  /// Throws InvalidInput unless every field lies in (0, 1).
  void validate() const;
};

struct Svd {
  Matrix u;
  RealVector sigma;  // descending, nonnegative
  Matrix v;
};

/// Singular value decomposition M = U diag(sigma) V*. With `full` the factors
/// are square; otherwise they are thin (min(rows, cols) columns).
Svd svd(const Matrix& m, bool full = false);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
struct SpectralFactorization {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

SpectralFactorization eigh(const Matrix& hermitian);

/// Number of singular values strictly above rank_rtol * scale. When `scale`
/// is negative the largest entry of `sigma` is used.
Index numerical_rank(const RealVector& sigma, const Tolerance& tol, double scale = -1.0);
Index numerical_rank(const Matrix& m, const Tolerance& tol, double scale = -1.0);

/// Orthonormal basis of the numerical kernel; cols(M) - rank columns.
Matrix nullspace_basis(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the numerical column space; rank columns.
Matrix range_basis(const Matrix& m, const Tolerance& tol, double scale = -1.0);

/// Moore-Penrose pseudo-inverse; singular values at or below the rank
/// threshold are treated as zero.
Matrix pinv(const Matrix& m, const Tolerance& tol);

/// S^{-1/2} for Hermitian positive definite S. Throws SingularOperator when the
/// smallest eigenvalue is at or below rank_rtol times the largest.
Matrix inv_sqrt_psd(const Matrix& s, const Tolerance& tol);

/// Principal square root of a Hermitian positive semidefinite matrix.
Matrix sqrt_psd(const Matrix& s, const Tolerance& tol);

/// Spectral norm (largest singular value); 0 for the zero matrix.
double operator_norm(const Matrix& m);

/// Largest principal angle between the column spans of two matrices with
/// orthonormal columns. Returns pi/2 when the dimensions differ.
double max_principal_angle(const Matrix& qa, const Matrix& qb);

/// ||(I - Q Q*) x|| for a matrix Q with orthonormal columns.
double distance_to_span(const Matrix& q, const Vector& x);

bool is_hermitian(const Matrix& m, double atol);

/// Throws InvalidInput naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

}  // namespace orbitframe
