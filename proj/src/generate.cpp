#include "orbitframe/generate.hpp"

#include <string>

#include "orbitframe/error.hpp"
#include "orbitframe/spectral_model.hpp"
#include "orbitframe/structure.hpp"

namespace orbitframe {

std::string_view family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kOnb: return "onb";
    case FamilyKind::kRieszRandom: return "riesz_random";
    case FamilyKind::kDuplicatedFirst: return "duplicated_first";
    case FamilyKind::kSpectralOrbit: return "spectral_orbit";
    case FamilyKind::kDirectSum: return "direct_sum";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (const FamilyKind kind : {FamilyKind::kOnb, FamilyKind::kRieszRandom, FamilyKind::kDuplicatedFirst,
                                FamilyKind::kSpectralOrbit, FamilyKind::kDirectSum}) {
    if (family_kind_name(kind) == name) {
      return kind;
    }
  }
  throw Error(ErrorKind::kInvalidParams, "unknown family kind '" + std::string(name) + "'");
}

Matrix random_complex_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // Column-major fill, real part first, so the stream order is fixed.
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_riesz_matrix(Index d, std::mt19937_64& rng, double max_condition) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix m = random_complex_matrix(d, d, rng);
    const RealVector sigma = svd(m).sigma;
    if (sigma(d - 1) > 0.0 && sigma(0) / sigma(d - 1) <= max_condition) {
      return m;
    }
  }
  throw Error(ErrorKind::kInvalidParams, "could not draw a well-conditioned basis");
}

GeneratedFamily generate_family(FamilyKind kind, const GenerateParams& params, std::uint64_t seed) {
  if (params.dim < 1) {
    throw Error(ErrorKind::kInvalidParams, "dim must be positive");
  }
  std::mt19937_64 rng(seed);
  const Index d = params.dim;
  auto spectral = [&]() {
    if (!(params.alpha > 1.0)) {
      throw Error(ErrorKind::kInvalidParams, "alpha must be > 1");
    }
    if (!(params.tail_tol > 0.0)) {
      throw Error(ErrorKind::kInvalidParams, "tail tolerance must be positive");
    }
    return spectral_orbit(sample_carleson_sequence(params.alpha, d), params.tail_tol);
  };

  switch (kind) {
    case FamilyKind::kOnb:
      return {VectorFamily(Matrix::Identity(d, d), "onb"), kind, std::nullopt};
    case FamilyKind::kRieszRandom:
      return {VectorFamily(random_riesz_matrix(d, rng), "riesz_random"), kind, std::nullopt};
    case FamilyKind::kDuplicatedFirst: {
      Matrix columns = Matrix::Zero(d, d + 1);
      columns(0, 0) = 1.0;
      columns.rightCols(d) = Matrix::Identity(d, d);
      return {VectorFamily(std::move(columns), "duplicated_first"), kind, std::nullopt};
    }
    case FamilyKind::kSpectralOrbit: {
      VectorFamily f = spectral();
      const Index depth = f.size();
      return {std::move(f), kind, depth};
    }
    case FamilyKind::kDirectSum: {
      if (params.basis_dim < 1) {
        throw Error(ErrorKind::kInvalidParams, "basis_dim must be positive");
      }
      const VectorFamily basis(random_riesz_matrix(params.basis_dim, rng), "basis");
      const VectorFamily h = spectral();
      const Index depth = h.size();
      VectorFamily sum = direct_sum_construct(basis, h);
      return {VectorFamily(sum.columns(), "direct_sum"), kind, depth};
    }
  }
  throw Error(ErrorKind::kInvalidParams, "unknown family kind");
}

}  // namespace orbitframe
