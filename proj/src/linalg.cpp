#include "orbitframe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbitframe/error.hpp"

namespace orbitframe {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kSingularOperator: return "SingularOperator";
    case ErrorKind::kDegenerateFamily: return "DegenerateFamily";
    case ErrorKind::kNotADual: return "NotADual";
    case ErrorKind::kNotAFrameOperator: return "NotAFrameOperator";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorKind::kInvalidAlpha: return "InvalidAlpha";
    case ErrorKind::kTailBoundUnreachable: return "TailBoundUnreachable";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kNoStabilization: return "NoStabilization";
    case ErrorKind::kInsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::kSpanConditionFailed: return "SpanConditionFailed";
    case ErrorKind::kInvalidContraction: return "InvalidContraction";
    case ErrorKind::kNotInSubspace: return "NotInSubspace";
    case ErrorKind::kInvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

void Tolerance::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string("tolerance field ") + name + " must lie in (0, 1)");
    }
  };
  check(rank_rtol, "rank_rtol");
  check(residual_atol, "residual_atol");
  check(equality_atol, "equality_atol");
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " has non-finite entries");
  }
}

namespace {

void require_nonempty(const Matrix& m, std::string_view what) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " is empty");
  }
}

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " is not square");
  }
}

}  // namespace

Svd svd(const Matrix& m, bool full) {
  require_nonempty(m, "svd input");
  require_finite(m, "svd input");
  const unsigned int options =
      full ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<Matrix> decomposition(m, options);
  // JacobiSVD already sorts singular values in decreasing order.
  return Svd{decomposition.matrixU(), decomposition.singularValues(), decomposition.matrixV()};
}

SpectralFactorization eigh(const Matrix& hermitian) {
  require_nonempty(hermitian, "eigh input");
  require_square(hermitian, "eigh input");
  require_finite(hermitian, "eigh input");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "Hermitian eigensolver did not converge");
  }
  const Index n = hermitian.rows();
  SpectralFactorization out{RealVector(n), Matrix(n, n)};
  for (Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

Index numerical_rank(const RealVector& sigma, const Tolerance& tol, double scale) {
  if (sigma.size() == 0) {
    return 0;
  }
  const double reference = scale < 0.0 ? sigma.maxCoeff() : scale;
  const double threshold = tol.rank_rtol * reference;
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) {
      ++rank;
    }
  }
  return rank;
}

Index numerical_rank(const Matrix& m, const Tolerance& tol, double scale) {
  if (m.rows() == 0 || m.cols() == 0) {
    return 0;
  }
  return numerical_rank(svd(m).sigma, tol, scale);
}

Matrix nullspace_basis(const Matrix& m, const Tolerance& tol) {
  const Svd s = svd(m, /*full=*/true);
  const Index rank = numerical_rank(s.sigma, tol);
  return s.v.rightCols(m.cols() - rank);
}

Matrix range_basis(const Matrix& m, const Tolerance& tol, double scale) {
  if (m.cols() == 0) {
    return Matrix(m.rows(), 0);
  }
  const Svd s = svd(m);
  const Index rank = numerical_rank(s.sigma, tol, scale);
  return s.u.leftCols(rank);
}

Matrix pinv(const Matrix& m, const Tolerance& tol) {
  const Svd s = svd(m);
  const Index rank = numerical_rank(s.sigma, tol);
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  for (Index i = 0; i < rank; ++i) {
    out += (s.v.col(i) / s.sigma(i)) * s.u.col(i).adjoint();
  }
  return out;
}

bool is_hermitian(const Matrix& m, double atol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= atol;
}

namespace {

SpectralFactorization checked_psd_factorization(const Matrix& s, const Tolerance& tol,
                                                std::string_view what) {
  require_nonempty(s, what);
  require_square(s, what);
  require_finite(s, what);
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (!is_hermitian(s, tol.equality_atol * scale)) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " is not Hermitian");
  }
  return eigh(0.5 * (s + s.adjoint()));
}

}  // namespace

Matrix inv_sqrt_psd(const Matrix& s, const Tolerance& tol) {
  const SpectralFactorization f = checked_psd_factorization(s, tol, "inv_sqrt_psd input");
  const double largest = f.eigenvalues(0);
  const double smallest = f.eigenvalues(f.eigenvalues.size() - 1);
  if (largest <= 0.0 || smallest <= tol.rank_rtol * largest) {
    throw Error(ErrorKind::kSingularOperator,
                "smallest eigenvalue " + std::to_string(smallest) + " is below the rank threshold");
  }
  const RealVector scales = f.eigenvalues.cwiseSqrt().cwiseInverse();
  Matrix r = f.eigenvectors * scales.cast<Complex>().asDiagonal() * f.eigenvectors.adjoint();
  return 0.5 * (r + r.adjoint());
}

Matrix sqrt_psd(const Matrix& s, const Tolerance& tol) {
  const SpectralFactorization f = checked_psd_factorization(s, tol, "sqrt_psd input");
  const double largest = std::max(0.0, f.eigenvalues(0));
  RealVector roots(f.eigenvalues.size());
  for (Index i = 0; i < roots.size(); ++i) {
    const double ev = f.eigenvalues(i);
    if (ev < -tol.rank_rtol * std::max(largest, 1.0)) {
      throw Error(ErrorKind::kInvalidInput, "sqrt_psd input has a negative eigenvalue");
    }
    roots(i) = std::sqrt(std::max(ev, 0.0));
  }
  Matrix r = f.eigenvectors * roots.cast<Complex>().asDiagonal() * f.eigenvectors.adjoint();
  return 0.5 * (r + r.adjoint());
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    return 0.0;
  }
  return svd(m).sigma(0);
}

double max_principal_angle(const Matrix& qa, const Matrix& qb) {
  if (qa.cols() != qb.cols()) {
    return std::acos(0.0);
  }
  if (qa.cols() == 0) {
    return 0.0;
  }
  // For equal dimensions sin(theta_max) = ||(I - Qa Qa*) Qb||.
  const Matrix residual = qb - qa * (qa.adjoint() * qb);
  return std::asin(std::min(1.0, operator_norm(residual)));
}

double distance_to_span(const Matrix& q, const Vector& x) {
  if (q.cols() == 0) {
    return x.norm();
  }
  return (x - q * (q.adjoint() * x)).norm();
}

}  // namespace orbitframe
