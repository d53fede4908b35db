#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "orbitframe/frame.hpp"

namespace orbitframe {

enum class FamilyKind { kOnb, kRieszRandom, kDuplicatedFirst, kSpectralOrbit, kDirectSum };

std::string_view family_kind_name(FamilyKind kind);
/// Throws InvalidParams for unknown names.
FamilyKind parse_family_kind(std::string_view name);

struct GenerateParams {
  Index dim = 4;          // ambient dimension (second block for direct_sum)
  double alpha = 2.0;     // Carleson parameter for spectral families
  double tail_tol = 1e-10;
  Index basis_dim = 3;    // first block of direct_sum
};

struct GeneratedFamily {
  VectorFamily family;
  FamilyKind kind;
  std::optional<Index> certified_depth;
};

/// Deterministic family of the requested kind:
///  onb              e_1..e_d
///  riesz_random     columns of a seeded complex Gaussian matrix, condition <= 1e6
///  duplicated_first e_1, e_1, e_2, ..., e_d
///  spectral_orbit   Carleson model orbit at the certified depth
///  direct_sum       random basis of C^basis_dim followed by a spectral orbit
GeneratedFamily generate_family(FamilyKind kind, const GenerateParams& params, std::uint64_t seed);

/// Complex Gaussian matrix with independent N(0,1) real and imaginary parts.
Matrix random_complex_matrix(Index rows, Index cols, std::mt19937_64& rng);

/// Random invertible matrix with condition number at most max_condition.
Matrix random_riesz_matrix(Index d, std::mt19937_64& rng, double max_condition = 1e6);

}  // namespace orbitframe
