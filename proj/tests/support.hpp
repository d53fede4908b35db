#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "orbitframe/error.hpp"
#include "orbitframe/frame.hpp"
#include "orbitframe/generate.hpp"
#include "orbitframe/spectral_model.hpp"
#include "orbitframe/structure.hpp"

namespace testing {

using namespace orbitframe;

// Kind of the orbitframe::Error thrown by `call`, or nullopt.
inline std::optional<ErrorKind> kind_of(const auto& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline Vector unit(Index d, Index k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

inline Matrix diag(const std::vector<Complex>& entries) {
  Matrix m = Matrix::Zero(static_cast<Index>(entries.size()), static_cast<Index>(entries.size()));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    m(static_cast<Index>(k), static_cast<Index>(k)) = entries[k];
  }
  return m;
}

inline VectorFamily family_of(const std::vector<Vector>& vectors, std::string label = {}) {
  return VectorFamily::from_vectors(vectors, std::move(label));
}

// {e_1, e_1, e_2, ..., e_d} in C^d.
inline VectorFamily duplicated_first(Index d) {
  std::vector<Vector> v{unit(d, 0)};
  for (Index k = 0; k < d; ++k) {
    v.push_back(unit(d, k));
  }
  return family_of(v, "duplicated_first");
}

// Eigenvalues with moduli in [lo, hi] and pairwise distance at least sep.
inline std::vector<Complex> separated_lambdas(std::mt19937_64& rng, Index d, double lo, double hi, double sep) {
  std::uniform_real_distribution<double> modulus(lo, hi);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<Complex> out;
  while (static_cast<Index>(out.size()) < d) {
    const Complex z = std::polar(modulus(rng), angle(rng));
    bool ok = true;
    for (const Complex& w : out) {
      ok = ok && std::abs(z - w) >= sep;
    }
    if (ok) {
      out.push_back(z);
    }
  }
  return out;
}

inline DiagonalModel random_model(std::mt19937_64& rng, Index d, double hi = 0.9) {
  return DiagonalModel(separated_lambdas(rng, d, 0.1, hi, 0.15));
}

inline Index uniform_index(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline VectorFamily swapped(const VectorFamily& f, Index a, Index b) {
  Matrix c = f.columns();
  c.col(a - 1).swap(c.col(b - 1));
  return VectorFamily(std::move(c), f.label() + " swapped");
}

struct LabelledFamily {
  VectorFamily family;
  bool representable;  // known by construction
};

// Fifty families with known answers: certified spectral orbits, random Riesz
// bases, direct sums, duplicated-first families and orbits with two tail
// elements interchanged.
inline std::vector<LabelledFamily> representability_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LabelledFamily> out;
  for (int i = 0; i < 10; ++i) {
    const DiagonalModel model = random_model(rng, uniform_index(rng, 2, 5));
    out.push_back({spectral_orbit(model, 1e-10), true});
  }
  for (int i = 0; i < 10; ++i) {
    out.push_back({VectorFamily(random_riesz_matrix(uniform_index(rng, 2, 6), rng), "riesz"), true});
  }
  for (int i = 0; i < 10; ++i) {
    const VectorFamily e(random_riesz_matrix(uniform_index(rng, 1, 3), rng), "basis");
    const VectorFamily h = spectral_orbit(random_model(rng, uniform_index(rng, 1, 3)), 1e-10);
    out.push_back({direct_sum_construct(e, h), true});
  }
  for (Index d = 2; d < 12; ++d) {
    out.push_back({duplicated_first(d), false});
  }
  for (int i = 0; i < 10; ++i) {
    const DiagonalModel model = random_model(rng, uniform_index(rng, 2, 4));
    const VectorFamily f = spectral_orbit(model, 1e-10);
    const Index a = uniform_index(rng, 2, 6);
    out.push_back({swapped(f, a, a + uniform_index(rng, 1, 4)), false});
  }
  return out;
}

}  // namespace testing
