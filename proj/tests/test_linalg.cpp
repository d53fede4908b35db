#include <doctest.h>

#include <numbers>

#include "orbitframe/error.hpp"
#include "orbitframe/linalg.hpp"
#include "support.hpp"

using namespace orbitframe;
using testing::diag;

TEST_CASE("svd of simple matrices") {
  CHECK(svd(Matrix::Identity(3, 3)).sigma.isApprox(RealVector::Ones(3)));

  const Svd s = svd(diag({2.0, 0.0}));
  CHECK(s.sigma(0) == doctest::Approx(2.0));
  CHECK(s.sigma(1) == doctest::Approx(0.0));
}

TEST_CASE("svd reconstructs and agrees with the Hermitian eigensolver") {
  std::mt19937_64 rng(11);
  const Matrix m = random_complex_matrix(4, 7, rng);
  const Svd s = svd(m);
  const Matrix rebuilt = s.u * s.sigma.cast<Complex>().asDiagonal() * s.v.adjoint();
  CHECK(operator_norm(rebuilt - m) <= 1e-10 * std::max(1.0, operator_norm(m)));
  CHECK((s.u.adjoint() * s.u - Matrix::Identity(4, 4)).norm() < 1e-12);
  CHECK((s.v.adjoint() * s.v - Matrix::Identity(4, 4)).norm() < 1e-12);

  const RealVector eig = eigh(m * m.adjoint()).eigenvalues;
  for (Index i = 0; i < 4; ++i) {
    CHECK(std::abs(s.sigma(i) - std::sqrt(eig(i))) <= 1e-9);
    if (i > 0) {
      CHECK(s.sigma(i) <= s.sigma(i - 1));
    }
  }
}

TEST_CASE("svd rejects non-finite and empty input") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svd(m), Error);
  try {
    svd(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
  }
  CHECK_THROWS_AS(svd(Matrix(0, 0)), Error);
}

TEST_CASE("nullspace basis") {
  const Tolerance tol;
  std::mt19937_64 rng(3);
  CHECK(nullspace_basis(random_riesz_matrix(3, rng), tol).cols() == 0);

  Matrix dup(3, 4);
  dup << 1, 1, 0, 0,
         0, 0, 1, 0,
         0, 0, 0, 1;
  const Matrix k = nullspace_basis(dup, tol);
  REQUIRE(k.cols() == 1);
  Vector expected(4);
  expected << 1.0, -1.0, 0.0, 0.0;
  expected /= std::sqrt(2.0);
  CHECK(std::abs(std::abs(k.col(0).dot(expected)) - 1.0) < 1e-12);

  // d = 4, N = 12 orbit of the alpha = 2 model spans C^4.
  const DiagonalModel model = sample_carleson_sequence(2.0, 4);
  const Matrix u = orbit(model.operator_matrix(), generator(model), 12).columns();
  const Matrix kernel = nullspace_basis(u, tol);
  CHECK(kernel.cols() == 8);
  for (Index j = 0; j < kernel.cols(); ++j) {
    CHECK((u * kernel.col(j)).norm() <= 1e-8);
  }
}

TEST_CASE("pseudo-inverse") {
  const Tolerance tol;
  CHECK(pinv(diag({2.0, 4.0}), tol).isApprox(diag({0.5, 0.25})));
  CHECK(pinv(diag({1.0, 0.0}), tol).isApprox(diag({1.0, 0.0})));

  std::mt19937_64 rng(5);
  const Matrix m = random_complex_matrix(3, 5, rng);
  const Matrix p = pinv(m, tol);
  CHECK(operator_norm(m * p - Matrix::Identity(3, 3)) <= 1e-8);
  CHECK(operator_norm(p * m * p - p) <= 1e-8);
  CHECK(operator_norm((p * m).adjoint() - p * m) <= 1e-8);
}

TEST_CASE("inverse square root") {
  const Tolerance tol;
  CHECK(inv_sqrt_psd(Matrix::Identity(3, 3), tol).isApprox(Matrix::Identity(3, 3)));
  CHECK(inv_sqrt_psd(diag({4.0, 9.0}), tol).isApprox(diag({0.5, 1.0 / 3.0})));

  const Matrix s = closed_form_frame_operator(sample_carleson_sequence(2.0, 4));
  const Matrix r = inv_sqrt_psd(s, tol);
  CHECK(is_hermitian(r, 1e-10));
  CHECK(operator_norm(r * s * r - Matrix::Identity(4, 4)) <= 1e-8);

  CHECK_THROWS_AS(inv_sqrt_psd(diag({1.0, 0.0}), tol), Error);
  try {
    inv_sqrt_psd(diag({1.0, 0.0}), tol);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSingularOperator);
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix::Identity(4, 4)) == doctest::Approx(1.0));
  CHECK(operator_norm(diag({0.3, Complex(0.0, -0.8), 0.5})) == doctest::Approx(0.8));
  CHECK(operator_norm(Matrix::Zero(2, 2)) == 0.0);
}

TEST_CASE("numerical rank uses one relative threshold") {
  Tolerance tol;
  RealVector sigma(3);
  sigma << 1.0, 1e-8, 1e-10;
  CHECK(numerical_rank(sigma, tol) == 2);
  tol.rank_rtol = 1e-7;
  CHECK(numerical_rank(sigma, tol) == 1);
  CHECK(numerical_rank(sigma, tol, 1e-2) == 2);
  CHECK(numerical_rank(RealVector(RealVector::Zero(2)), tol) == 0);
}

TEST_CASE("range basis and principal angles") {
  const Tolerance tol;
  Matrix m(3, 2);
  m << 1, 1,
       0, 0,
       0, 0;
  const Matrix r = range_basis(m, tol);
  CHECK(r.cols() == 1);
  CHECK(max_principal_angle(r, testing::unit(3, 0)) < 1e-12);
  CHECK(max_principal_angle(testing::unit(3, 0), testing::unit(3, 1)) == doctest::Approx(std::numbers::pi / 2));
  CHECK(max_principal_angle(Matrix::Identity(3, 2), Matrix::Identity(3, 1)) ==
        doctest::Approx(std::numbers::pi / 2));

  Matrix tilted(2, 1);
  tilted << std::cos(0.3), std::sin(0.3);
  CHECK(max_principal_angle(testing::unit(2, 0), tilted) == doctest::Approx(0.3));
  CHECK(distance_to_span(testing::unit(2, 0), testing::unit(2, 1)) == doctest::Approx(1.0));
}

TEST_CASE("tolerance validation") {
  Tolerance tol;
  tol.rank_rtol = 0.0;
  CHECK_THROWS_AS(tol.validate(), Error);
  tol = Tolerance{};
  tol.residual_atol = 2.0;
  CHECK_THROWS_AS(tol.validate(), Error);
  CHECK_NOTHROW(Tolerance{}.validate());
}

TEST_CASE("error messages carry the kind name") {
  const Error e(ErrorKind::kModulusOutOfRange, "bad");
  CHECK(std::string(e.what()).find("ModulusOutOfRange") != std::string::npos);
  CHECK(e.kind() == ErrorKind::kModulusOutOfRange);
}
