#include "orbitframe/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "orbitframe/error.hpp"

namespace orbitframe {

double perturbation_radius(double a, double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw Error(ErrorKind::kInvalidContraction, "contraction constant must lie in [0, 1)");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorKind::kInvalidInput, "lower frame bound must be positive");
  }
  return std::sqrt(a * (1.0 - mu * mu));
}

namespace {

PerturbationSetup base_setup(const Matrix& t, const Vector& phi, const Matrix& v_basis, const Tolerance& tol) {
  tol.validate();
  if (t.rows() == 0 || t.rows() != t.cols() || phi.size() != t.rows() || v_basis.rows() != t.rows()) {
    throw Error(ErrorKind::kInvalidInput, "operator, generator and subspace dimensions must agree");
  }
  require_finite(t, "operator");
  require_finite(phi, "generator");
  const Index m = v_basis.cols();
  if (m > 0 &&
      (v_basis.adjoint() * v_basis - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > tol.equality_atol) {
    throw Error(ErrorKind::kInvalidInput, "subspace basis must have orthonormal columns");
  }

  PerturbationSetup setup;
  setup.t = t;
  setup.phi = phi;
  setup.v_basis = v_basis;
  if (m > 0) {
    const Matrix image = t * v_basis;
    const Matrix compressed = v_basis.adjoint() * image;
    const double leak = operator_norm(image - v_basis * compressed);
    if (leak > tol.residual_atol * std::max(1.0, operator_norm(t))) {
      throw Error(ErrorKind::kInvalidInput, "subspace is not invariant under the operator");
    }
    setup.mu = operator_norm(compressed);
  }
  if (!(setup.mu < 1.0)) {
    throw Error(ErrorKind::kInvalidContraction,
                "operator is not a contraction on the subspace (mu = " + std::to_string(setup.mu) + ")");
  }
  return setup;
}

void finish_setup(PerturbationSetup& setup, const Tolerance& tol) {
  const FrameReport report = frame_bounds(orbit(setup.t, setup.phi, setup.depth), tol);
  if (!report.is_frame) {
    throw Error(ErrorKind::kInvalidInput, "unperturbed orbit is not a frame");
  }
  setup.a = report.lower_bound_a;
  setup.radius = perturbation_radius(setup.a, setup.mu);
}

void require_in_subspace(const PerturbationSetup& setup, const Vector& phi_tilde, const Tolerance& tol) {
  if (phi_tilde.size() != setup.t.rows()) {
    throw Error(ErrorKind::kInvalidInput, "perturbation has the wrong dimension");
  }
  require_finite(phi_tilde, "perturbation");
  const double off = distance_to_span(setup.v_basis, phi_tilde);
  if (off > tol.residual_atol * std::max(1.0, phi_tilde.norm())) {
    throw Error(ErrorKind::kNotInSubspace,
                "perturbation is " + std::to_string(off) + " away from the invariant subspace");
  }
}

}  // namespace

PerturbationSetup fixed_depth_setup(const Matrix& t, const Vector& phi, const Matrix& v_basis, Index depth,
                                    const Tolerance& tol) {
  if (depth < 1) {
    throw Error(ErrorKind::kInvalidInput, "depth must be positive");
  }
  PerturbationSetup setup = base_setup(t, phi, v_basis, tol);
  setup.depth = depth;
  finish_setup(setup, tol);
  return setup;
}

PerturbationSetup certified_setup(const Matrix& t, const Vector& phi, const Matrix& v_basis, double tail_tol,
                                  const Tolerance& tol) {
  PerturbationSetup setup = base_setup(t, phi, v_basis, tol);
  const double norm = operator_norm(t);
  const Matrix commutator = t * t.adjoint() - t.adjoint() * t;
  if (commutator.cwiseAbs().maxCoeff() > tol.equality_atol * std::max(1.0, norm * norm)) {
    throw Error(ErrorKind::kInvalidInput, "certified depths need a normal operator");
  }
  // For normal T the spectral radius equals the norm.
  setup.depth = certified_depth(norm, phi.squaredNorm(), tail_tol);
  setup.tail_tol = tail_tol;
  finish_setup(setup, tol);
  return setup;
}

Index perturbed_depth(const PerturbationSetup& setup, const Vector& phi_tilde, double tail_tol) {
  if (!setup.tail_tol) {
    return setup.depth;
  }
  const Vector generator = setup.phi + phi_tilde;
  return std::max(setup.depth, certified_depth(operator_norm(setup.t), generator.squaredNorm(), tail_tol));
}

FrameReport perturbed_orbit_test(const PerturbationSetup& setup, const Vector& phi_tilde, double tail_tol,
                                 const Tolerance& tol) {
  require_in_subspace(setup, phi_tilde, tol);
  const Index depth = perturbed_depth(setup, phi_tilde, tail_tol);
  return frame_bounds(orbit(setup.t, setup.phi + phi_tilde, depth), tol);
}

double perturbation_energy(const PerturbationSetup& setup, const Vector& phi_tilde, Index depth,
                           const Tolerance& tol) {
  require_in_subspace(setup, phi_tilde, tol);
  if (depth < 1) {
    throw Error(ErrorKind::kInvalidInput, "depth must be positive");
  }
  double energy = 0.0;
  Vector current = phi_tilde;
  for (Index n = 0; n < depth; ++n) {
    energy += current.squaredNorm();
    current = setup.t * current;
  }
  return energy;
}

double bessel_bound_of_orbit(const Matrix& t, const Vector& psi, Index depth) {
  const double sigma = operator_norm(orbit(t, psi, depth).columns());
  return sigma * sigma;
}

TailEstimate difference_operator_tail(const PerturbationSetup& setup, const Vector& phi_tilde, Index cutoff,
                                      Index depth, const Tolerance& tol) {
  require_in_subspace(setup, phi_tilde, tol);
  if (cutoff < 0 || depth <= cutoff + 1) {
    throw Error(ErrorKind::kInvalidInput, "need 0 <= cutoff and cutoff + 1 < depth");
  }
  const VectorFamily terms = orbit(setup.t, phi_tilde, depth);
  TailEstimate out;
  out.actual = operator_norm(terms.columns().rightCols(depth - cutoff - 1));
  out.bound = phi_tilde.norm() * std::pow(setup.mu, static_cast<double>(cutoff + 1)) /
              std::sqrt(1.0 - setup.mu * setup.mu);
  return out;
}

TrendPoint union_orbit_bounds(const DiagonalModel& model, const Matrix& generators, double tail_tol,
                              const Tolerance& tol) {
  if (generators.rows() != model.dim() || generators.cols() < 1) {
    throw Error(ErrorKind::kInvalidInput, "generators must be dim x J with J >= 1");
  }
  const Index j = generators.cols();
  const Index depth = certified_depth(model.spectral_radius(), generators.squaredNorm(), tail_tol);
  const Matrix t = model.operator_matrix();
  Matrix columns(model.dim(), j * depth);
  for (Index g = 0; g < j; ++g) {
    columns.middleCols(g * depth, depth) = orbit(t, generators.col(g), depth).columns();
  }
  const FrameReport report = frame_bounds(VectorFamily(std::move(columns)), tol);
  TrendPoint point;
  point.dim = model.dim();
  point.generators = j;
  point.depth = depth;
  point.lower_bound = report.is_frame ? report.lower_bound_a : 0.0;
  point.upper_bound = report.upper_bound_b;
  return point;
}

std::vector<TrendPoint> compact_nogo_trend(std::span<const double> lambdas, Index j, std::span<const Index> dims,
                                           std::uint64_t seed, double tail_tol, const Tolerance& tol) {
  if (j < 1) {
    throw Error(ErrorKind::kInvalidInput, "need at least one generator");
  }
  if (dims.empty() || !std::is_sorted(dims.begin(), dims.end()) ||
      std::adjacent_find(dims.begin(), dims.end()) != dims.end() || dims.front() < 1) {
    throw Error(ErrorKind::kInvalidInput, "dimensions must be positive and strictly increasing");
  }
  if (static_cast<std::size_t>(dims.back()) > lambdas.size()) {
    throw Error(ErrorKind::kInvalidInput, "not enough eigenvalues for the largest dimension");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<TrendPoint> out;
  out.reserve(dims.size());
  for (const Index d : dims) {
    std::vector<Complex> head;
    for (Index k = 0; k < d; ++k) {
      head.emplace_back(lambdas[static_cast<std::size_t>(k)], 0.0);
    }
    const DiagonalModel model(std::move(head));
    Matrix generators(d, j);
    for (Index g = 0; g < j; ++g) {
      for (Index k = 0; k < d; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        generators(k, g) = Complex(re, im);
      }
      generators.col(g).normalize();
    }
    out.push_back(union_orbit_bounds(model, generators, tail_tol, tol));
  }
  return out;
}

}  // namespace orbitframe
