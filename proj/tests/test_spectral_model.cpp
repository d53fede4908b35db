#include <doctest.h>

#include <algorithm>

#include "orbitframe/spectral_model.hpp"
#include "support.hpp"

using namespace orbitframe;
using testing::kind_of;

TEST_CASE("diagonal model invariants") {
  const DiagonalModel model({0.5, Complex(0.0, -0.7)});
  CHECK(model.dim() == 2);
  CHECK(model.spectral_radius() == doctest::Approx(0.7));
  CHECK(model.operator_matrix().isApprox(testing::diag({0.5, Complex(0.0, -0.7)})));

  CHECK(kind_of([] { DiagonalModel({0.5, 1.0}); }) == ErrorKind::kModulusOutOfRange);
  CHECK(kind_of([] { DiagonalModel({Complex(0.8, 0.8)}); }) == ErrorKind::kModulusOutOfRange);
  CHECK(kind_of([] { DiagonalModel(std::vector<Complex>{}); }) == ErrorKind::kInvalidInput);
  try {
    DiagonalModel({0.5, 1.0});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("|lambda_2| < 1 violated") != std::string::npos);
  }
}

TEST_CASE("Carleson products") {
  const std::vector<Complex> single{0.5};
  CHECK(carleson_lower_bound(single).infimum == 1.0);

  const std::vector<Complex> twice{0.3, 0.3};
  const CarlesonReport dup = carleson_lower_bound(twice);
  CHECK(dup.infimum == 0.0);
  CHECK(dup.has_duplicates);
  CHECK_FALSE(dup.satisfied);

  const DiagonalModel model = sample_carleson_sequence(2.0, 12);
  const CarlesonReport r = carleson_lower_bound(model.lambdas());
  CHECK(r.per_index_products.size() == 12);
  CHECK(std::abs(r.infimum - 0.016886832666488144) <= 1e-14);
  CHECK(r.infimum == *std::min_element(r.per_index_products.begin(), r.per_index_products.end()));
  CHECK(r.satisfied);
  CHECK_FALSE(r.has_duplicates);
}

TEST_CASE("Carleson sequence sampling") {
  const DiagonalModel m = sample_carleson_sequence(2.0, 3);
  CHECK(m.lambdas()[0] == Complex(0.5));
  CHECK(m.lambdas()[1] == Complex(0.75));
  CHECK(m.lambdas()[2] == Complex(0.875));
  CHECK(sample_carleson_sequence(10.0, 1).lambdas()[0].real() == doctest::Approx(0.9));
  for (const double alpha : {1.5, 2.0, 7.0}) {
    CHECK(sample_carleson_sequence(alpha, 5).spectral_radius() == doctest::Approx(1.0 - std::pow(alpha, -5.0)));
  }
  CHECK(kind_of([] { sample_carleson_sequence(1.0, 3); }) == ErrorKind::kInvalidAlpha);
  CHECK(kind_of([] { sample_carleson_sequence(0.5, 3); }) == ErrorKind::kInvalidAlpha);
}

TEST_CASE("generator") {
  CHECK(generator(DiagonalModel({0.0, 0.0, 0.0})).isApprox(Vector::Ones(3)));
  CHECK(generator(DiagonalModel({0.5}))(0).real() == doctest::Approx(std::sqrt(0.75)));
  const Vector phi = generator(sample_carleson_sequence(2.0, 4));
  const double expected[] = {std::sqrt(1 - .25), std::sqrt(1 - .5625), std::sqrt(1 - .765625),
                             std::sqrt(1 - .87890625)};
  for (Index k = 0; k < 4; ++k) {
    CHECK(phi(k).real() == doctest::Approx(expected[k]).epsilon(1e-14));
  }
}

TEST_CASE("closed-form frame operator") {
  CHECK(closed_form_frame_operator(DiagonalModel({0.0, 0.0})).isApprox(Matrix::Ones(2, 2)));
  CHECK(std::abs(closed_form_frame_operator(DiagonalModel({0.5}))(0, 0) - 1.0) <= 1e-15);

  const DiagonalModel model = sample_carleson_sequence(2.0, 4);
  const Matrix s = closed_form_frame_operator(model);
  CHECK(is_hermitian(s, 1e-14));
  const IteratedFrameOperator it = iterated_frame_operator(model, 1e-12);
  CHECK((s - it.s).cwiseAbs().maxCoeff() <= 1e-10);

  const RealVector eig = eigh(s).eigenvalues;
  CHECK(std::abs(eig(3) - 0.0034624304943786829) <= 1e-12);
  CHECK(std::abs(eig(0) - 3.4466999469416742) <= 1e-12);

  const RealVector eig6 = eigh(closed_form_frame_operator(sample_carleson_sequence(2.0, 6))).eigenvalues;
  CHECK(std::abs(eig6(5) - 5.588342189620515e-4) <= 1e-12);
  CHECK(std::abs(eig6(0) - 4.61129259667882) <= 1e-10);
}

TEST_CASE("certified depth") {
  CHECK(certified_depth(0.0, 3.0, 1e-10) == 1);
  CHECK(certified_depth(0.5, 0.0, 1e-10) == 1);
  CHECK(kind_of([] { certified_depth(1.0, 1.0, 1e-10); }) == ErrorKind::kTailBoundUnreachable);

  // d = 1, lambda = 0.9: ceil(log(tol (1 - rho^2) / |phi|^2) / (2 log rho)) with |phi|^2 = 1 - rho^2.
  const double rho = 0.9;
  const double formula = std::ceil(std::log(1e-10) / (2.0 * std::log(rho)));
  CHECK(certified_depth(rho, 1.0 - rho * rho, 1e-10) == static_cast<Index>(formula));
  CHECK(certified_depth(rho, 1.0 - rho * rho, 1e-10) == 110);

  for (const Index d : {4, 6, 8}) {
    const DiagonalModel m = sample_carleson_sequence(2.0, d);
    const double norm_sq = generator(m).squaredNorm();
    const double r = m.spectral_radius();
    const Index n = certified_depth(r, norm_sq, 1e-10);
    CHECK(norm_sq * std::pow(r, 2.0 * n) / (1 - r * r) <= 1e-10);
    CHECK(norm_sq * std::pow(r, 2.0 * (n - 1)) / (1 - r * r) > 1e-10);
  }
  CHECK(certified_depth(sample_carleson_sequence(2.0, 4).spectral_radius(),
                        generator(sample_carleson_sequence(2.0, 4)).squaredNorm(), 1e-10) == 199);
  CHECK(certified_depth(sample_carleson_sequence(2.0, 6).spectral_radius(),
                        generator(sample_carleson_sequence(2.0, 6)).squaredNorm(), 1e-10) == 857);
}

TEST_CASE("iterated frame operator") {
  const IteratedFrameOperator zero = iterated_frame_operator(DiagonalModel({0.0, 0.0, 0.0}), 1e-10);
  CHECK(zero.depth == 1);
  CHECK(zero.s.isApprox(Matrix::Ones(3, 3)));

  const IteratedFrameOperator scalar = iterated_frame_operator(DiagonalModel({0.9}), 1e-10);
  CHECK(scalar.depth == 110);
  CHECK(std::abs(scalar.s(0, 0) - 1.0) <= 1e-10);

  const DiagonalModel model = sample_carleson_sequence(2.0, 6);
  CHECK(operator_norm(iterated_frame_operator(model, 1e-10).s - closed_form_frame_operator(model)) <= 1e-8);

  CHECK(spectral_orbit(sample_carleson_sequence(2.0, 4), 1e-10).size() == 199);
}

TEST_CASE("drop component") {
  const DiagonalModel two = sample_carleson_sequence(2.0, 2);
  const Vector phi = generator(two);
  const Vector psi = drop_component(two, phi, 1);
  CHECK(psi(0) == Complex(0.0));
  CHECK(psi(1) == phi(1));
  CHECK((phi - psi).norm() == doctest::Approx(std::sqrt(1 - 0.25)));

  const FrameReport r = frame_bounds(orbit(two.operator_matrix(), psi, 50));
  CHECK_FALSE(r.is_frame);
  CHECK(r.span_dim == 1);
  CHECK(r.lower_bound_a > 0.0);

  const DiagonalModel one({0.3});
  CHECK(drop_component(one, generator(one), 1).isZero());
  CHECK(kind_of([&] { drop_component(one, generator(one), 2); }) == ErrorKind::kIndexOutOfRange);
  CHECK(kind_of([&] { drop_component(one, generator(one), 0); }) == ErrorKind::kIndexOutOfRange);

  // The removed component shrinks as lambda_ell approaches 1.
  const DiagonalModel model = sample_carleson_sequence(2.0, 8);
  double previous = 1.0;
  for (Index ell = 1; ell <= 8; ++ell) {
    const double gap = (generator(model) - drop_component(model, generator(model), ell)).norm();
    CHECK(gap == doctest::Approx(std::sqrt(1.0 - std::norm(model.lambdas()[ell - 1]))));
    CHECK(gap < previous);
    previous = gap;
  }
}

TEST_CASE("shrink operator") {
  CHECK(shrink_operator(Matrix::Identity(3, 3), 0.5).isApprox(0.5 * Matrix::Identity(3, 3)));
  CHECK(operator_norm(shrink_operator(Matrix::Identity(3, 3), 0.5)) == doctest::Approx(0.5));
  const Matrix t = sample_carleson_sequence(2.0, 4).operator_matrix();
  CHECK(operator_norm(t - shrink_operator(t, 0.2)) == doctest::Approx(0.2 * operator_norm(t)));
  CHECK(kind_of([&] { shrink_operator(t, 0.0); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([&] { shrink_operator(t, 1.0); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("shrink trend over model dimension") {
  const std::vector<Index> dims{4, 8, 16, 32};
  const std::vector<ShrinkTrendPoint> points = shrink_trend(2.0, 0.1, dims, 1e-10);
  REQUIRE(points.size() == 4);
  CHECK(std::abs(points[0].lower_bound - 1.58e-4) <= 0.01e-4);
  for (std::size_t i = 1; i < points.size(); ++i) {
    CHECK(points[i].lower_bound <= points[i - 1].lower_bound);
  }
  CHECK(points.back().lower_bound <= 1e-12);
  CHECK(points[0].original_lower == doctest::Approx(0.0034624304943786829));

  // At a fixed model the truncated frame operator is a partial sum of
  // positive terms, so its lower bound can only grow with the orbit depth.
  const Matrix w = shrink_operator(sample_carleson_sequence(2.0, 4).operator_matrix(), 0.1);
  const Vector phi = generator(sample_carleson_sequence(2.0, 4));
  double previous = 0.0;
  for (const Index n : {8, 16, 32, 64}) {
    const double a = frame_bounds(orbit(w, phi, n)).lower_bound_a;
    CHECK(a >= previous);
    previous = a;
  }

  const std::vector<Index> bad{8, 4};
  CHECK(kind_of([&] { shrink_trend(2.0, 0.1, bad, 1e-10); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([&] { shrink_trend(2.0, 1.5, dims, 1e-10); }) == ErrorKind::kInvalidInput);
}
