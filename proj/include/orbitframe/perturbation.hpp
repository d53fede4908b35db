#pragma once

// Stability of orbit frames under perturbations of the generator inside a
// T-invariant subspace on which T is a contraction, and the finite-dimensional
// trend experiment for unions of orbits of operators with eigenvalues -> 0.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbitframe/frame.hpp"
#include "orbitframe/spectral_model.hpp"

namespace orbitframe {

struct PerturbationSetup {
  Matrix t;
  Vector phi;
  Matrix v_basis;  // orthonormal columns
  double mu = 0.0;  // certified: ||V* T V||
  double a = 0.0;   // lower frame bound of the unperturbed truncated orbit
  double radius = 0.0;  // sqrt(a (1 - mu^2))
  Index depth = 0;
  std::optional<double> tail_tol;  // set when depths are certified (normal T, ||T|| < 1)
};

/// sqrt(A (1 - mu^2)). InvalidContraction for mu outside [0, 1), InvalidInput
/// for A <= 0.
double perturbation_radius(double a, double mu);

/// Setup with a fixed orbit depth, for arbitrary T. Checks invariance of V and
/// certifies mu from the compressed operator; InvalidContraction if mu >= 1.
PerturbationSetup fixed_depth_setup(const Matrix& t, const Vector& phi, const Matrix& v_basis,
                                    Index depth, const Tolerance& tol = {});

/// Setup for a normal T with ||T|| < 1, where the orbit depth is certified
/// from the geometric tail bound (tail_tol).
PerturbationSetup certified_setup(const Matrix& t, const Vector& phi, const Matrix& v_basis,
                                  double tail_tol, const Tolerance& tol = {});

/// Frame report of the truncated orbit {T^n (phi + phi_tilde)}. The depth is
/// the setup depth, raised if needed so that the perturbed generator's tail is
/// also within tail_tol (certified setups only). NotInSubspace if phi_tilde is
/// not in V.
FrameReport perturbed_orbit_test(const PerturbationSetup& setup, const Vector& phi_tilde, double tail_tol,
                                 const Tolerance& tol = {});

/// Orbit depth used by perturbed_orbit_test for the same arguments.
Index perturbed_depth(const PerturbationSetup& setup, const Vector& phi_tilde, double tail_tol);

/// sum_{n < depth} ||T^n phi_tilde||^2.
double perturbation_energy(const PerturbationSetup& setup, const Vector& phi_tilde, Index depth,
                           const Tolerance& tol = {});

/// Upper frame bound (largest squared singular value) of {T^n psi}_{n < depth}.
double bessel_bound_of_orbit(const Matrix& t, const Vector& psi, Index depth);

struct TailEstimate {
  double actual = 0.0;  // ||{T^n phi_tilde}_{cutoff < n < depth}|| as a synthesis operator
  double bound = 0.0;   // ||phi_tilde|| mu^{cutoff+1} / sqrt(1 - mu^2)
};

/// Norm of the difference operator K - K_cutoff restricted to the computed
/// depth, against the geometric estimate.
TailEstimate difference_operator_tail(const PerturbationSetup& setup, const Vector& phi_tilde,
                                      Index cutoff, Index depth, const Tolerance& tol = {});

struct TrendPoint {
  Index dim = 0;
  Index generators = 0;
  Index depth = 0;
  double lower_bound = 0.0;  // 0 when the union orbit does not span C^dim
  double upper_bound = 0.0;
};

/// Frame bounds of the union of orbits of diag(lambdas) over the columns of
/// `generators`, truncated at the certified depth for tail_tol.
TrendPoint union_orbit_bounds(const DiagonalModel& model, const Matrix& generators, double tail_tol,
                              const Tolerance& tol = {});

/// For each d in dims, the diagonal model on the first d entries of
/// `lambdas`, J random unit generators drawn from `seed`, and the bounds of
/// the union orbit.
std::vector<TrendPoint> compact_nogo_trend(std::span<const double> lambdas, Index j,
                                           std::span<const Index> dims, std::uint64_t seed,
                                           double tail_tol, const Tolerance& tol = {});

}  // namespace orbitframe
