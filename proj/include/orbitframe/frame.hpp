#pragma once

#include <span>
#include <string>
#include <vector>

#include "orbitframe/linalg.hpp"

namespace orbitframe {

/// Ordered finite list of vectors in C^dim. Order is part of the data: the
/// k-th vector is the k-th frame element, and every position-based operation
/// in the library refers to it.
class VectorFamily {
 public:
  /// Columns of `columns` are the family members, in frame order.
  explicit VectorFamily(Matrix columns, std::string label = {});

  static VectorFamily from_vectors(std::span<const Vector> vectors, std::string label = {});

  Index dim() const { return columns_.rows(); }
  Index size() const { return columns_.cols(); }

  /// Zero-based access to the k-th member.
  Vector vector(Index k) const { return columns_.col(k); }

  const Matrix& columns() const { return columns_; }
  const std::string& label() const { return label_; }

  double max_norm() const;

  /// Members [first, first + count) as a new family.
  VectorFamily slice(Index first, Index count) const;

  bool operator==(const VectorFamily& other) const;

 private:
  Matrix columns_;
  std::string label_;
};

/// The orbit {T^n phi}_{n < depth}, built by repeated multiplication.
VectorFamily orbit(const Matrix& t, const Vector& phi, Index depth, std::string label = {});

struct FrameReport {
  double lower_bound_a = 0.0;  // smallest nonzero squared singular value
  double upper_bound_b = 0.0;  // largest squared singular value
  bool is_frame = false;       // frame for all of C^dim
  bool is_tight = false;
  bool is_riesz_basis = false;
  Index excess = 0;  // size - span_dim
  Index span_dim = 0;

  bool operator==(const FrameReport&) const = default;
};

/// d x N matrix whose k-th column is f_k.
Matrix synthesis_matrix(const VectorFamily& f);

FrameReport frame_bounds(const VectorFamily& f, const Tolerance& tol = {});

/// S = U U*.
Matrix frame_operator(const VectorFamily& f);

/// g_k = S^+ f_k, computed as the adjoint of pinv(U).
VectorFamily canonical_dual(const VectorFamily& f, const Tolerance& tol = {});

/// ||U G* Q - Q|| where Q is an orthonormal basis of span(F): the failure of
/// the reconstruction identity sum <f, g_k> f_k = f on span(F).
double duality_residual(const VectorFamily& f, const Matrix& proposal, const Tolerance& tol = {});

/// Checked constructor: returns the proposed family (columns of `proposal`)
/// if it is a dual of F on span(F), otherwise throws NotADual.
VectorFamily alternate_dual(const VectorFamily& f, const Matrix& proposal, const Tolerance& tol = {});

/// Adds a kernel component to the canonical dual: G = G_can + W (I - U^+ U),
/// where W is d x N. Every dual of a full-span frame has this form.
VectorFamily dual_with_kernel_component(const VectorFamily& f, const Matrix& w,
                                        const Tolerance& tol = {});

/// {S^{-1/2} f_k}; requires F to span C^dim (SingularOperator otherwise).
VectorFamily canonical_tight(const VectorFamily& f, const Tolerance& tol = {});

/// A family whose frame operator is T, namely the columns of T^{1/2}.
/// Throws NotAFrameOperator unless T is Hermitian positive definite.
VectorFamily frame_operator_factorization(const Matrix& t, const Tolerance& tol = {});

}  // namespace orbitframe
