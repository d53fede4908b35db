#include "orbitframe/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "orbitframe/error.hpp"

namespace orbitframe {

DiagonalModel::DiagonalModel(std::vector<Complex> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) {
    throw Error(ErrorKind::kInvalidInput, "a diagonal model needs at least one eigenvalue");
  }
  for (std::size_t k = 0; k < lambdas_.size(); ++k) {
    const Complex l = lambdas_[k];
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) {
      throw Error(ErrorKind::kInvalidInput, "eigenvalue " + std::to_string(k + 1) + " is not finite");
    }
    if (!(std::abs(l) < 1.0)) {
      throw Error(ErrorKind::kModulusOutOfRange,
                  "|lambda_" + std::to_string(k + 1) + "| < 1 violated (modulus " +
                      std::to_string(std::abs(l)) + ")");
    }
    spectral_radius_ = std::max(spectral_radius_, std::abs(l));
  }
}

Matrix DiagonalModel::operator_matrix() const {
  Matrix t = Matrix::Zero(dim(), dim());
  for (Index k = 0; k < dim(); ++k) {
    t(k, k) = lambdas_[static_cast<std::size_t>(k)];
  }
  return t;
}

CarlesonReport carleson_lower_bound(std::span<const Complex> lambdas, double delta) {
  // Validates the moduli.
  const DiagonalModel model(std::vector<Complex>(lambdas.begin(), lambdas.end()));
  CarlesonReport report;
  const std::size_t n = lambdas.size();
  report.per_index_products.assign(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    double product = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) {
        continue;
      }
      if (lambdas[j] == lambdas[k]) {
        report.has_duplicates = true;
      }
      product *= std::abs(lambdas[j] - lambdas[k]) / std::abs(1.0 - lambdas[j] * std::conj(lambdas[k]));
    }
    report.per_index_products[k] = product;
  }
  report.infimum = *std::min_element(report.per_index_products.begin(), report.per_index_products.end());
  report.satisfied = report.infimum > delta;
  return report;
}

DiagonalModel sample_carleson_sequence(double alpha, Index d) {
  if (!std::isfinite(alpha) || !(alpha > 1.0)) {
    throw Error(ErrorKind::kInvalidAlpha, "alpha must be a finite number > 1");
  }
  if (d < 1) {
    throw Error(ErrorKind::kInvalidInput, "dimension must be positive");
  }
  std::vector<Complex> lambdas;
  lambdas.reserve(static_cast<std::size_t>(d));
  for (Index k = 1; k <= d; ++k) {
    lambdas.emplace_back(1.0 - std::pow(alpha, -static_cast<double>(k)), 0.0);
  }
  return DiagonalModel(std::move(lambdas));
}

Vector generator(const DiagonalModel& model) {
  Vector phi(model.dim());
  for (Index k = 0; k < model.dim(); ++k) {
    const double m = std::abs(model.lambdas()[static_cast<std::size_t>(k)]);
    phi(k) = std::sqrt(1.0 - m * m);
  }
  return phi;
}

Matrix closed_form_frame_operator(const DiagonalModel& model) {
  return closed_form_frame_operator(model, generator(model));
}

Matrix closed_form_frame_operator(const DiagonalModel& model, const Vector& phi) {
  if (phi.size() != model.dim()) {
    throw Error(ErrorKind::kInvalidInput, "generator dimension does not match the model");
  }
  const auto& l = model.lambdas();
  Matrix s(model.dim(), model.dim());
  for (Index j = 0; j < model.dim(); ++j) {
    for (Index k = 0; k < model.dim(); ++k) {
      const Complex ratio = l[static_cast<std::size_t>(j)] * std::conj(l[static_cast<std::size_t>(k)]);
      s(j, k) = phi(j) * std::conj(phi(k)) / (1.0 - ratio);
    }
  }
  return s;
}

Index certified_depth(double rho, double norm_sq, double tail_tol) {
  if (!(tail_tol > 0.0) || !std::isfinite(tail_tol)) {
    throw Error(ErrorKind::kInvalidInput, "tail tolerance must be positive");
  }
  if (!(rho >= 0.0) || !std::isfinite(norm_sq) || norm_sq < 0.0) {
    throw Error(ErrorKind::kInvalidInput, "spectral radius and generator norm must be nonnegative");
  }
  if (rho >= 1.0) {
    throw Error(ErrorKind::kTailBoundUnreachable, "spectral radius must be < 1 for a geometric tail bound");
  }
  if (norm_sq == 0.0 || rho == 0.0) {
    return 1;
  }
  const double log_rho = std::log(rho);
  const double denom = 1.0 - rho * rho;
  auto bound = [&](Index n) { return norm_sq * std::exp(2.0 * static_cast<double>(n) * log_rho) / denom; };
  const double estimate = std::log(tail_tol * denom / norm_sq) / (2.0 * log_rho);
  Index n = std::max<Index>(1, static_cast<Index>(std::ceil(std::max(estimate, 1.0))));
  while (bound(n) > tail_tol) {
    ++n;
  }
  while (n > 1 && bound(n - 1) <= tail_tol) {
    --n;
  }
  return n;
}

IteratedFrameOperator iterated_frame_operator(const DiagonalModel& model, double tail_tol) {
  return iterated_frame_operator(model, generator(model), tail_tol);
}

IteratedFrameOperator iterated_frame_operator(const DiagonalModel& model, const Vector& phi,
                                              double tail_tol) {
  if (phi.size() != model.dim()) {
    throw Error(ErrorKind::kInvalidInput, "generator dimension does not match the model");
  }
  const Index depth = certified_depth(model.spectral_radius(), phi.squaredNorm(), tail_tol);
  const auto& l = model.lambdas();
  Matrix s = Matrix::Zero(model.dim(), model.dim());
  Vector current = phi;
  for (Index n = 0; n < depth; ++n) {
    s += current * current.adjoint();
    for (Index k = 0; k < model.dim(); ++k) {
      current(k) *= l[static_cast<std::size_t>(k)];
    }
  }
  return IteratedFrameOperator{std::move(s), depth};
}

VectorFamily spectral_orbit(const DiagonalModel& model, double tail_tol) {
  const Vector phi = generator(model);
  const Index depth = certified_depth(model.spectral_radius(), phi.squaredNorm(), tail_tol);
  return orbit(model.operator_matrix(), phi, depth, "spectral orbit");
}

Vector drop_component(const DiagonalModel& model, const Vector& phi, Index ell) {
  if (phi.size() != model.dim()) {
    throw Error(ErrorKind::kInvalidInput, "generator dimension does not match the model");
  }
  if (ell < 1 || ell > model.dim()) {
    throw Error(ErrorKind::kIndexOutOfRange, "component index must lie in 1..dim");
  }
  Vector psi = phi;
  psi(ell - 1) = 0.0;
  return psi;
}

Matrix shrink_operator(const Matrix& t, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  return (1.0 - epsilon) * t;
}

namespace {

double clamped_lower_bound(const Matrix& s, const Tolerance& tol) {
  const RealVector ev = eigh(s).eigenvalues;
  const double largest = ev(0);
  const double smallest = ev(ev.size() - 1);
  // Squared singular values of the synthesis operator; same rank threshold.
  if (largest <= 0.0 || smallest <= tol.rank_rtol * tol.rank_rtol * largest) {
    return 0.0;
  }
  return smallest;
}

}  // namespace

std::vector<ShrinkTrendPoint> shrink_trend(double alpha, double epsilon, std::span<const Index> dims,
                                           double tail_tol, const Tolerance& tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  if (dims.empty() || dims.front() < 1 ||
      std::adjacent_find(dims.begin(), dims.end(), std::greater_equal<>()) != dims.end()) {
    throw Error(ErrorKind::kInvalidInput, "dimensions must be positive and strictly increasing");
  }
  std::vector<ShrinkTrendPoint> out;
  out.reserve(dims.size());
  for (const Index d : dims) {
    const DiagonalModel model = sample_carleson_sequence(alpha, d);
    const Vector phi = generator(model);
    std::vector<Complex> shrunk;
    for (const Complex l : model.lambdas()) {
      shrunk.push_back((1.0 - epsilon) * l);
    }
    const DiagonalModel shrunk_model(std::move(shrunk));
    ShrinkTrendPoint point;
    point.dim = d;
    point.depth = certified_depth(shrunk_model.spectral_radius(), phi.squaredNorm(), tail_tol);
    point.lower_bound = clamped_lower_bound(closed_form_frame_operator(shrunk_model, phi), tol);
    point.original_lower = clamped_lower_bound(closed_form_frame_operator(model, phi), tol);
    out.push_back(point);
  }
  return out;
}

}  // namespace orbitframe
