#include "orbitframe/structure.hpp"

#include <algorithm>
#include <string>

namespace orbitframe {

namespace {

void require_square_operator(const Matrix& t) {
  if (t.rows() == 0 || t.rows() != t.cols()) {
    throw Error(ErrorKind::kInvalidInput, "operator must be square and nonempty");
  }
  require_finite(t, "operator");
}

// Kernel of m with the rank threshold rank_rtol * scale.
Matrix scaled_nullspace(const Matrix& m, const Tolerance& tol, double scale) {
  const Svd s = svd(m, /*full=*/true);
  const Index rank = numerical_rank(s.sigma, tol, scale);
  return s.v.rightCols(m.cols() - rank);
}

}  // namespace

ChainReport chain_report(const Matrix& t, const Tolerance& tol, Index max_k) {
  require_square_operator(t);
  if (max_k < 1) {
    throw Error(ErrorKind::kInvalidInput, "max_k must be positive");
  }
  const Index d = t.rows();
  const double scale = operator_norm(t);

  ChainReport report;
  bool image_done = false;
  bool null_done = false;

  Matrix range = Matrix::Identity(d, d);
  report.image_ranks.push_back(d);
  Matrix kernel(d, 0);
  report.null_dims.push_back(0);

  for (Index k = 0; k <= max_k && !(image_done && null_done); ++k) {
    if (!image_done) {
      const Matrix next = range_basis(t * range, tol, scale);
      if (next.cols() == range.cols()) {
        report.q_t = k;
        image_done = true;
      } else {
        report.image_ranks.push_back(next.cols());
        range = next;
      }
    }
    if (!null_done) {
      const Matrix projected = t - kernel * (kernel.adjoint() * t);
      const Matrix next = scaled_nullspace(projected, tol, scale);
      if (next.cols() == kernel.cols()) {
        report.null_length = k;
        null_done = true;
      } else {
        report.null_dims.push_back(next.cols());
        kernel = next;
      }
    }
  }
  if (!image_done || !null_done) {
    throw NoStabilization(report, "chains did not stabilize within max_k = " + std::to_string(max_k));
  }
  return report;
}

TailSpaceReport tail_space_report(const VectorFamily& f, const Matrix& t, Index n, Index l,
                                  const Tolerance& tol) {
  require_square_operator(t);
  if (t.rows() != f.dim()) {
    throw Error(ErrorKind::kInvalidInput, "operator and family dimensions differ");
  }
  if (n < 0 || l < 1) {
    throw Error(ErrorKind::kInvalidInput, "need N >= 0 and L >= 1");
  }
  if (f.size() < n + l + f.dim()) {
    throw Error(ErrorKind::kInsufficientTruncation,
                "orbit has " + std::to_string(f.size()) + " vectors, need at least N + L + dim = " +
                    std::to_string(n + l + f.dim()));
  }
  const Index m = f.size();
  const Matrix& cols = f.columns();
  const double orbit_residual =
      (t * cols.leftCols(m - 1) - cols.rightCols(m - 1)).colwise().norm().maxCoeff();
  if (orbit_residual > tol.residual_atol * f.max_norm()) {
    throw Error(ErrorKind::kInvalidInput, "family is not the orbit of the supplied operator");
  }

  TailSpaceReport report;
  report.start_index_n = n;
  report.v_basis = range_basis(cols.rightCols(m - n), tol);
  report.v_dim = report.v_basis.cols();
  report.codim = f.dim() - report.v_dim;
  report.stable = report.v_dim > 0;

  for (Index shift = 0; shift <= l; ++shift) {
    const Matrix tail = cols.rightCols(m - n - shift);
    const Svd s = svd(tail);
    const Index rank = numerical_rank(s.sigma, tol);
    const Matrix basis = s.u.leftCols(rank);
    const bool same_space =
        rank == report.v_dim && max_principal_angle(report.v_basis, basis) <= kSubspaceAngleTol;
    FrameBoundsPair bounds;
    bounds.b = s.sigma(0) * s.sigma(0);
    bounds.a = (same_space && rank > 0) ? s.sigma(rank - 1) * s.sigma(rank - 1) : 0.0;
    report.per_shift_frame_bounds.push_back(bounds);
    if (!same_space || !(bounds.a > 0.0)) {
      report.stable = false;
    }
  }
  return report;
}

Index tail_stabilization_index(const VectorFamily& f, const Matrix& t, Index l, Index max_n,
                               const Tolerance& tol) {
  for (Index n = 0; n <= max_n; ++n) {
    if (tail_space_report(f, t, n, l, tol).stable) {
      return n;
    }
  }
  return -1;
}

FrameReport block_removal_check(const VectorFamily& f, Index n, Index ell, const Tolerance& tol) {
  if (n < 1 || ell < 1 || n + ell > f.size()) {
    throw Error(ErrorKind::kIndexOutOfRange, "block removal needs 1 <= N, 1 <= ell, N + ell <= size");
  }
  const Index removed = ell - 1;
  Matrix kept(f.dim(), f.size() - removed);
  kept.leftCols(n) = f.columns().leftCols(n);
  kept.rightCols(f.size() - n - removed) = f.columns().rightCols(f.size() - n - removed);
  return frame_bounds(VectorFamily(std::move(kept), f.label()), tol);
}

namespace {

// Coordinates of E with respect to an orthonormal basis of its span; E itself
// when it already spans its ambient space.
Matrix basis_block_coordinates(const VectorFamily& e, const Tolerance& tol) {
  const FrameReport report = frame_bounds(e, tol);
  if (report.excess != 0) {
    throw Error(ErrorKind::kInvalidInput, "basis block must be linearly independent");
  }
  if (report.span_dim == e.dim()) {
    return e.columns();
  }
  const Matrix q = range_basis(e.columns(), tol);
  return q.adjoint() * e.columns();
}

}  // namespace

VectorFamily direct_sum_construct(const VectorFamily& e, const VectorFamily& h, const Tolerance& tol) {
  const Matrix coords = basis_block_coordinates(e, tol);
  const Index d1 = coords.rows();
  const Index d2 = h.dim();
  Matrix out = Matrix::Zero(d1 + d2, e.size() + h.size());
  out.topLeftCorner(d1, e.size()) = coords;
  out.bottomRightCorner(d2, h.size()) = h.columns();
  return VectorFamily(std::move(out), "direct sum");
}

Matrix direct_sum_operator(const VectorFamily& e, const VectorFamily& h, const Matrix& h_operator,
                           const Tolerance& tol) {
  if (h_operator.rows() != h.dim() || h_operator.cols() != h.dim()) {
    throw Error(ErrorKind::kInvalidInput, "second-block operator must be dim(H) x dim(H)");
  }
  const Matrix coords = basis_block_coordinates(e, tol);
  const Index m = coords.cols();
  const Index d2 = h.dim();
  const Matrix coords_inv = coords.inverse();

  Matrix shift = Matrix::Zero(m, m);
  for (Index k = 0; k + 1 < m; ++k) {
    shift(k + 1, k) = 1.0;
  }
  Matrix t = Matrix::Zero(m + d2, m + d2);
  t.topLeftCorner(m, m) = coords * shift * coords_inv;
  t.bottomLeftCorner(d2, m) = h.columns().col(0) * coords_inv.row(m - 1);
  t.bottomRightCorner(d2, d2) = h_operator;
  return t;
}

SwapOutcome swap_experiment(const VectorFamily& f, Index ell, Index ell_prime, const Tolerance& tol) {
  if (ell == ell_prime) {
    throw Error(ErrorKind::kInvalidInput, "swap positions must differ");
  }
  if (ell < 1 || ell_prime < 1 || ell > f.size() || ell_prime > f.size()) {
    throw Error(ErrorKind::kIndexOutOfRange, "swap positions must lie in 1..size");
  }
  if (!assess_representability(f, tol).representable) {
    throw Error(ErrorKind::kInvalidInput, "swap experiment needs a representable family");
  }

  const std::vector<Index> excluded{ell - 1, ell, ell_prime - 1, ell_prime};
  Matrix rest(f.dim(), 0);
  for (Index k = 1; k <= f.size(); ++k) {
    if (std::find(excluded.begin(), excluded.end(), k) == excluded.end()) {
      rest.conservativeResize(Eigen::NoChange, rest.cols() + 1);
      rest.col(rest.cols() - 1) = f.columns().col(k - 1);
    }
  }
  const bool spans = rest.cols() > 0 && numerical_rank(rest, tol) == f.dim();

  Matrix swapped = f.columns();
  swapped.col(ell - 1).swap(swapped.col(ell_prime - 1));
  VectorFamily swapped_family(std::move(swapped), f.label() + " (swapped)");
  RepresentabilityVerdict verdict = assess_representability(swapped_family, tol);
  return SwapOutcome{spans, std::move(swapped_family), std::move(verdict)};
}

TailMapProperties surjectivity_injectivity_on_tail(const Matrix& t, const Matrix& v_basis,
                                                   const Tolerance& tol) {
  require_square_operator(t);
  if (v_basis.rows() != t.rows()) {
    throw Error(ErrorKind::kInvalidInput, "subspace basis has the wrong ambient dimension");
  }
  const Index m = v_basis.cols();
  if (m == 0) {
    return TailMapProperties{true, true, true};
  }
  if ((v_basis.adjoint() * v_basis - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > tol.equality_atol) {
    throw Error(ErrorKind::kInvalidInput, "subspace basis must have orthonormal columns");
  }
  const double scale = operator_norm(t);
  const Matrix image = t * v_basis;
  const Matrix leak = image - v_basis * (v_basis.adjoint() * image);
  TailMapProperties out;
  out.invariant = operator_norm(leak) <= tol.residual_atol * std::max(1.0, scale);
  out.surjective = numerical_rank(Matrix(v_basis.adjoint() * image), tol, scale) == m;
  out.injective = numerical_rank(image, tol, scale) == m;
  return out;
}

}  // namespace orbitframe
