#include <doctest.h>

#include "orbitframe/generate.hpp"
#include "orbitframe/serialize.hpp"
#include "support.hpp"

using namespace orbitframe;
using testing::kind_of;

TEST_CASE("family kinds") {
  for (const char* name : {"onb", "riesz_random", "duplicated_first", "spectral_orbit", "direct_sum"}) {
    CHECK(family_kind_name(parse_family_kind(name)) == name);
  }
  CHECK(kind_of([] { parse_family_kind("hilbert"); }) == ErrorKind::kInvalidParams);
}

TEST_CASE("generated families") {
  GenerateParams p;
  p.dim = 4;
  CHECK(generate_family(FamilyKind::kOnb, p, 0).family.columns().isApprox(Matrix::Identity(4, 4)));

  p.dim = 7;
  const VectorFamily dup = generate_family(FamilyKind::kDuplicatedFirst, p, 0).family;
  CHECK(dup == testing::duplicated_first(7));
  CHECK(dup.size() == 8);
  CHECK(dup.vector(0).isApprox(dup.vector(1)));

  p.dim = 4;
  p.alpha = 2.0;
  p.tail_tol = 1e-10;
  const GeneratedFamily orbit_family = generate_family(FamilyKind::kSpectralOrbit, p, 0);
  REQUIRE(orbit_family.certified_depth.has_value());
  CHECK(*orbit_family.certified_depth == 199);
  CHECK(orbit_family.family.size() == 199);

  p.dim = 5;
  const VectorFamily riesz = generate_family(FamilyKind::kRieszRandom, p, 42).family;
  const RealVector sigma = svd(riesz.columns()).sigma;
  CHECK(sigma(0) / sigma(4) <= 1e6);
  CHECK(frame_bounds(riesz).is_riesz_basis);
  CHECK(riesz == generate_family(FamilyKind::kRieszRandom, p, 42).family);
  CHECK_FALSE(riesz == generate_family(FamilyKind::kRieszRandom, p, 43).family);

  p.dim = 2;
  p.basis_dim = 3;
  const GeneratedFamily sum = generate_family(FamilyKind::kDirectSum, p, 5);
  CHECK(sum.family.dim() == 5);
  CHECK(sum.family.size() == 3 + *sum.certified_depth);
  CHECK(assess_representability(sum.family).representable);
}

TEST_CASE("invalid generation parameters") {
  GenerateParams p;
  p.dim = 0;
  CHECK(kind_of([&] { generate_family(FamilyKind::kOnb, p, 0); }) == ErrorKind::kInvalidParams);
  p.dim = 3;
  p.alpha = 1.0;
  CHECK(kind_of([&] { generate_family(FamilyKind::kSpectralOrbit, p, 0); }) == ErrorKind::kInvalidParams);
  p.alpha = 2.0;
  p.tail_tol = 0.0;
  CHECK(kind_of([&] { generate_family(FamilyKind::kSpectralOrbit, p, 0); }) == ErrorKind::kInvalidParams);
  p.tail_tol = 1e-10;
  p.basis_dim = 0;
  CHECK(kind_of([&] { generate_family(FamilyKind::kDirectSum, p, 0); }) == ErrorKind::kInvalidParams);
}

TEST_CASE("family JSON round trip") {
  GenerateParams p;
  p.dim = 3;
  const VectorFamily f = generate_family(FamilyKind::kSpectralOrbit, p, 0).family;
  const Json j = family_to_json(f);
  CHECK(j["dim"] == 3);
  CHECK(j["vectors"].size() == static_cast<std::size_t>(f.size()));
  CHECK(j["vectors"][0].size() == 3);
  CHECK(j["vectors"][0][0].size() == 2);

  const VectorFamily back = family_from_json(parse_json_text(j.dump(), "memory"));
  CHECK(back == f);
  CHECK(frame_bounds(back) == frame_bounds(f));
  const RepresentabilityVerdict a = assess_representability(f);
  const RepresentabilityVerdict b = assess_representability(back);
  CHECK(verdict_to_json(a).dump() == verdict_to_json(b).dump());
}

TEST_CASE("family JSON schema violations") {
  CHECK(kind_of([] { family_from_json(Json::parse(R"({"dim": 2})")); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { family_from_json(Json::parse(R"({"dim": 2, "vectors": [[[1, 0]]]})")); }) ==
        ErrorKind::kInvalidInput);
  CHECK(kind_of([] { family_from_json(Json::parse(R"({"dim": 1, "vectors": [[[1, 0, 3]]]})")); }) ==
        ErrorKind::kInvalidInput);
  CHECK(kind_of([] { family_from_json(Json::parse(R"({"dim": 1, "vectors": []})")); }) == ErrorKind::kInvalidInput);

  // Real entries are accepted as well.
  const VectorFamily real = family_from_json(Json::parse(R"({"vectors": [[1, 0], [0, 2]]})"));
  CHECK(real.columns().isApprox(testing::diag({1.0, 2.0})));
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_json_text("{\n  \"dim\": 2,\n  \"vectors\": [[1, 0] [0, 1]]\n}\n", "family.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
    CHECK(std::string(e.what()).find("family.json:3:") != std::string::npos);
  }
}

TEST_CASE("model JSON") {
  const DiagonalModel m({0.5, Complex(0.1, -0.2)});
  const DiagonalModel back = model_from_json(model_to_json(m));
  CHECK(back.lambdas() == m.lambdas());
  CHECK(kind_of([] { model_from_json(Json::parse(R"({"lambdas": [[1.0, 0.0]]})")); }) ==
        ErrorKind::kModulusOutOfRange);
  CHECK(kind_of([] { model_from_json(Json::parse(R"({"lambda": []})")); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("report JSON") {
  const Json v = verdict_to_json(assess_representability(testing::duplicated_first(3)));
  CHECK(v["representable"] == false);
  CHECK(v["norm_lo"] == 1.0);
  CHECK(v["residuals"].size() == 3);
  std::vector<std::string> keys;
  for (const auto& item : v.items()) {
    keys.push_back(item.key());
  }
  CHECK(keys == std::vector<std::string>{"representable", "max_shift_residual", "kernel_invariance_residual",
                                         "norm_T", "norm_lo", "norm_hi", "residuals"});

  RepresentabilityVerdict unbounded;
  unbounded.norm_hi = std::numeric_limits<double>::infinity();
  CHECK(verdict_to_json(unbounded)["norm_hi"].is_null());
}

TEST_CASE("CSV numbers") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-10) == "1e-10");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);

  TrendPoint p;
  p.dim = 4;
  p.generators = 2;
  p.depth = 17;
  p.lower_bound = 0.25;
  p.upper_bound = 1.5;
  CHECK(trend_to_csv({p}) == "d,J,depth,lower_bound,upper_bound\n4,2,17,0.25,1.5\n");
}
