#include "orbitframe/frame.hpp"

#include <algorithm>
#include <cmath>

#include "orbitframe/error.hpp"

namespace orbitframe {

VectorFamily::VectorFamily(Matrix columns, std::string label)
    : columns_(std::move(columns)), label_(std::move(label)) {
  if (columns_.rows() < 1 || columns_.cols() < 1) {
    throw Error(ErrorKind::kInvalidInput, "a vector family needs dim >= 1 and at least one vector");
  }
  require_finite(columns_, "vector family");
}

VectorFamily VectorFamily::from_vectors(std::span<const Vector> vectors, std::string label) {
  if (vectors.empty()) {
    throw Error(ErrorKind::kInvalidInput, "a vector family needs at least one vector");
  }
  const Index dim = vectors.front().size();
  Matrix columns(dim, static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != dim) {
      throw Error(ErrorKind::kInvalidInput,
                  "vector " + std::to_string(k + 1) + " has dimension " +
                      std::to_string(vectors[k].size()) + ", expected " + std::to_string(dim));
    }
    columns.col(static_cast<Index>(k)) = vectors[k];
  }
  return VectorFamily(std::move(columns), std::move(label));
}

double VectorFamily::max_norm() const { return columns_.colwise().norm().maxCoeff(); }

VectorFamily VectorFamily::slice(Index first, Index count) const {
  if (first < 0 || count < 1 || first + count > size()) {
    throw Error(ErrorKind::kIndexOutOfRange, "slice outside the family");
  }
  return VectorFamily(columns_.middleCols(first, count), label_);
}

bool VectorFamily::operator==(const VectorFamily& other) const {
  return label_ == other.label_ && columns_.rows() == other.columns_.rows() &&
         columns_.cols() == other.columns_.cols() && columns_ == other.columns_;
}

VectorFamily orbit(const Matrix& t, const Vector& phi, Index depth, std::string label) {
  if (t.rows() != t.cols() || t.rows() != phi.size()) {
    throw Error(ErrorKind::kInvalidInput, "orbit needs a square operator matching the generator");
  }
  if (depth < 1) {
    throw Error(ErrorKind::kInvalidInput, "orbit depth must be positive");
  }
  Matrix columns(phi.size(), depth);
  columns.col(0) = phi;
  for (Index n = 1; n < depth; ++n) {
    columns.col(n) = t * columns.col(n - 1);
  }
  return VectorFamily(std::move(columns), std::move(label));
}

Matrix synthesis_matrix(const VectorFamily& f) { return f.columns(); }

FrameReport frame_bounds(const VectorFamily& f, const Tolerance& tol) {
  const Svd s = svd(f.columns());
  FrameReport report;
  const Index rank = numerical_rank(s.sigma, tol);
  report.span_dim = rank;
  report.excess = f.size() - rank;
  report.upper_bound_b = s.sigma(0) * s.sigma(0);
  if (rank > 0) {
    report.lower_bound_a = s.sigma(rank - 1) * s.sigma(rank - 1);
  }
  report.is_frame = rank > 0 && rank == f.dim();
  report.is_tight = report.is_frame && std::abs(report.lower_bound_a - report.upper_bound_b) <=
                                           tol.equality_atol * report.upper_bound_b;
  report.is_riesz_basis = report.is_frame && report.excess == 0;
  return report;
}

Matrix frame_operator(const VectorFamily& f) { return f.columns() * f.columns().adjoint(); }

VectorFamily canonical_dual(const VectorFamily& f, const Tolerance& tol) {
  if (f.columns().cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorKind::kDegenerateFamily, "all vectors are zero");
  }
  return VectorFamily(pinv(f.columns(), tol).adjoint(), f.label() + " (canonical dual)");
}

double duality_residual(const VectorFamily& f, const Matrix& proposal, const Tolerance& tol) {
  if (proposal.rows() != f.dim() || proposal.cols() != f.size()) {
    throw Error(ErrorKind::kLengthMismatch, "proposed dual must have the shape of the family");
  }
  const Matrix q = range_basis(f.columns(), tol);
  if (q.cols() == 0) {
    return 0.0;
  }
  return operator_norm(f.columns() * (proposal.adjoint() * q) - q);
}

VectorFamily alternate_dual(const VectorFamily& f, const Matrix& proposal, const Tolerance& tol) {
  const double residual = duality_residual(f, proposal, tol);
  if (!(residual <= tol.residual_atol)) {
    throw Error(ErrorKind::kNotADual,
                "reconstruction residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return VectorFamily(proposal, f.label() + " (dual)");
}

VectorFamily dual_with_kernel_component(const VectorFamily& f, const Matrix& w, const Tolerance& tol) {
  if (w.rows() != f.dim() || w.cols() != f.size()) {
    throw Error(ErrorKind::kLengthMismatch, "kernel component must be dim x size");
  }
  const Matrix u_pinv = pinv(f.columns(), tol);
  const Matrix kernel_projector = Matrix::Identity(f.size(), f.size()) - u_pinv * f.columns();
  const Matrix proposal = u_pinv.adjoint() + w * kernel_projector;
  return alternate_dual(f, proposal, tol);
}

VectorFamily canonical_tight(const VectorFamily& f, const Tolerance& tol) {
  const Svd s = svd(f.columns());
  const Index rank = numerical_rank(s.sigma, tol);
  if (rank < f.dim()) {
    throw Error(ErrorKind::kSingularOperator, "family does not span the space");
  }
  // With U = W diag(sigma) V*, S^{-1/2} = W diag(1/sigma) W*.
  const RealVector inv = s.sigma.head(rank).cwiseInverse();
  const Matrix inv_sqrt_s = s.u.leftCols(rank) * inv.cast<Complex>().asDiagonal() *
                            s.u.leftCols(rank).adjoint();
  return VectorFamily(inv_sqrt_s * f.columns(), f.label() + " (canonical tight)");
}

VectorFamily frame_operator_factorization(const Matrix& t, const Tolerance& tol) {
  if (t.rows() == 0 || t.rows() != t.cols()) {
    throw Error(ErrorKind::kInvalidInput, "frame operator candidate must be square");
  }
  require_finite(t, "frame operator candidate");
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if (!is_hermitian(t, tol.equality_atol * scale)) {
    throw Error(ErrorKind::kNotAFrameOperator, "operator is not self-adjoint");
  }
  const SpectralFactorization f = eigh(0.5 * (t + t.adjoint()));
  const double largest = f.eigenvalues(0);
  const double smallest = f.eigenvalues(f.eigenvalues.size() - 1);
  if (largest <= 0.0 || smallest <= tol.rank_rtol * largest) {
    throw Error(ErrorKind::kNotAFrameOperator, "operator is not positive and invertible");
  }
  return VectorFamily(sqrt_psd(t, tol), "frame operator square root");
}

}  // namespace orbitframe
