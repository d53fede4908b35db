#include "orbitframe/representability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbitframe/error.hpp"

namespace orbitframe {

namespace {

void require_two_members(const VectorFamily& f) {
  if (f.size() < 2) {
    throw Error(ErrorKind::kInvalidInput, "representability needs at least two vectors");
  }
}

double upper_norm_bound(const FrameReport& report) {
  if (report.lower_bound_a <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::sqrt(report.upper_bound_b / report.lower_bound_a);
}

}  // namespace

Matrix candidate_operator(const VectorFamily& f, const VectorFamily& g, const Tolerance& tol) {
  tol.validate();
  if (g.size() != f.size() || g.dim() != f.dim()) {
    throw Error(ErrorKind::kLengthMismatch, "dual must have the same length and dimension as the family");
  }
  require_two_members(f);
  const Index n = f.size();
  return f.columns().rightCols(n - 1) * g.columns().leftCols(n - 1).adjoint();
}

double kernel_shift_invariance(const VectorFamily& f, const Tolerance& tol) {
  require_two_members(f);
  const Index n = f.size();
  const Svd s = svd(f.columns());
  const Index rank = numerical_rank(s.sigma, tol);
  if (rank == 0 || rank == n) {
    // Either every shifted vector is again in the (full) kernel, or the
    // kernel is trivial.
    return 0.0;
  }
  // Kernel = orthogonal complement of the row space span(V_r).
  const Matrix row_space = s.v.leftCols(rank);

  // Restrict to kernel vectors with vanishing last coordinate: the
  // complement of span(V_r, e_N).
  Vector last = Vector::Zero(n);
  last(n - 1) = 1.0;
  last -= row_space * row_space.adjoint().col(n - 1);
  Matrix excluded = row_space;
  if (last.norm() > tol.rank_rtol) {
    excluded.conservativeResize(Eigen::NoChange, rank + 1);
    excluded.col(rank) = last / last.norm();
  }
  if (excluded.cols() >= n) {
    return 0.0;
  }

  // Distance of the shift of c to the kernel is ||V_r* shift(c)||; the matrix
  // V_r* shift has columns conj(V_r(k+1, :)) and a zero last column.
  Matrix shifted = Matrix::Zero(rank, n);
  shifted.leftCols(n - 1) = row_space.bottomRows(n - 1).adjoint();
  const Matrix restricted = shifted - (shifted * excluded) * excluded.adjoint();
  return operator_norm(restricted);
}

RepresentabilityVerdict check_shift_property(const VectorFamily& f, const Matrix& t,
                                             const Tolerance& tol) {
  tol.validate();
  require_two_members(f);
  if (t.rows() != f.dim() || t.cols() != f.dim()) {
    throw Error(ErrorKind::kInvalidInput, "operator must be dim x dim");
  }
  require_finite(t, "operator");

  RepresentabilityVerdict verdict;
  verdict.candidate_t = t;
  const Index n = f.size();
  const Matrix images = t * f.columns().leftCols(n - 1) - f.columns().rightCols(n - 1);
  verdict.shift_residuals.resize(static_cast<std::size_t>(n - 1));
  for (Index j = 0; j + 1 < n; ++j) {
    const double r = images.col(j).norm();
    verdict.shift_residuals[static_cast<std::size_t>(j)] = r;
    verdict.max_shift_residual = std::max(verdict.max_shift_residual, r);
  }
  verdict.representable = verdict.max_shift_residual <= tol.residual_atol * f.max_norm();
  verdict.kernel_invariance_residual = kernel_shift_invariance(f, tol);
  verdict.norm_t = operator_norm(t);
  verdict.norm_hi = upper_norm_bound(frame_bounds(f, tol));
  return verdict;
}

RepresentabilityVerdict assess_representability(const VectorFamily& f, const Tolerance& tol) {
  const VectorFamily dual = canonical_dual(f, tol);
  return check_shift_property(f, candidate_operator(f, dual, tol), tol);
}

double dual_falsification(const VectorFamily& f, const VectorFamily& g1, const VectorFamily& g2,
                          const Tolerance& tol) {
  const VectorFamily first = alternate_dual(f, g1.columns(), tol);
  const VectorFamily second = alternate_dual(f, g2.columns(), tol);
  return operator_norm(candidate_operator(f, first, tol) - candidate_operator(f, second, tol));
}

NormSandwich norm_sandwich(const VectorFamily& f, const Matrix& t, const Tolerance& tol,
                           NormRegime regime) {
  const FrameReport report = frame_bounds(f, tol);
  if (!report.is_frame) {
    throw Error(ErrorKind::kInvalidInput, "norm bounds need a frame spanning the whole space");
  }
  NormSandwich out;
  out.regime = regime;
  out.norm_t = operator_norm(t);
  out.upper = upper_norm_bound(report);
  out.lo_ok = out.norm_t >= 1.0 - tol.equality_atol;
  out.hi_ok = out.norm_t <= out.upper + tol.equality_atol;
  return out;
}

}  // namespace orbitframe
