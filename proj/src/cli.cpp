#include "orbitframe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "orbitframe/error.hpp"
#include "orbitframe/generate.hpp"
#include "orbitframe/perturbation.hpp"
#include "orbitframe/representability.hpp"
#include "orbitframe/serialize.hpp"
#include "orbitframe/spectral_model.hpp"
#include "orbitframe/structure.hpp"

namespace orbitframe {

namespace {

struct Common {
  std::string input;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  double tol_rank = Tolerance{}.rank_rtol;
  double tol_res = Tolerance{}.residual_atol;
  std::optional<Index> depth;
  double tail = 1e-10;
  bool strict = false;

  Tolerance tolerance() const {
    Tolerance tol;
    tol.rank_rtol = tol_rank;
    tol.residual_atol = tol_res;
    tol.validate();
    return tol;
  }
};

struct Report {
  std::string text;
  bool negative = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kInvalidInput, "cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_json(const std::string& path) {
  if (path.empty()) {
    throw Error(ErrorKind::kInvalidInput, "--input is required for this command");
  }
  return parse_json_text(read_file(path), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_json(const Common& c, const char* command) {
  if (c.format != "json") {
    throw Error(ErrorKind::kInvalidInput, std::string(command) + " only writes JSON reports");
  }
}

// Model from --input ({"lambdas": ...}) or from the Carleson sequence (alpha, dim).
DiagonalModel load_model(const Common& c, double alpha, Index dim) {
  if (!c.input.empty()) {
    return model_from_json(read_json(c.input));
  }
  return sample_carleson_sequence(alpha, dim);
}

Matrix random_unitary(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::HouseholderQR<Matrix> qr(random_complex_matrix(d, d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    const double m = std::abs(r(k, k));
    if (m > 0.0) {
      q.col(k) *= r(k, k) / m;
    }
  }
  return q;
}

Report cmd_analyze(const Common& c) {
  require_json(c, "analyze");
  const Tolerance tol = c.tolerance();
  const VectorFamily f = family_from_json(read_json(c.input));
  const FrameReport report = frame_bounds(f, tol);
  Json out;
  out["label"] = f.label();
  out["dim"] = f.dim();
  out["size"] = f.size();
  out["frame"] = frame_report_to_json(report);
  if (report.is_frame) {
    out["canonical_tight"] = frame_report_to_json(frame_bounds(canonical_tight(f, tol), tol));
  }
  return {dump(out), !report.is_frame};
}

Report cmd_represent(const Common& c, const std::string& dual_path) {
  const Tolerance tol = c.tolerance();
  const VectorFamily f = family_from_json(read_json(c.input));
  RepresentabilityVerdict verdict;
  if (dual_path.empty()) {
    verdict = assess_representability(f, tol);
  } else {
    const VectorFamily g = alternate_dual(f, family_from_json(read_json(dual_path)).columns(), tol);
    verdict = check_shift_property(f, candidate_operator(f, g, tol), tol);
    verdict.kernel_invariance_residual = kernel_shift_invariance(f, tol);
  }
  if (c.format == "csv") {
    std::string text = "k,residual\n";
    for (std::size_t k = 0; k < verdict.shift_residuals.size(); ++k) {
      text += std::to_string(k + 1) + "," + format_double(verdict.shift_residuals[k]) + "\n";
    }
    return {text, !verdict.representable};
  }
  Json out = verdict_to_json(verdict);
  out["T"] = matrix_to_json(verdict.candidate_t);
  return {dump(out), !verdict.representable};
}

Report cmd_carleson(const Common& c, double alpha, Index dim, double delta) {
  const DiagonalModel model = load_model(c, alpha, dim);
  const CarlesonReport report = carleson_lower_bound(model.lambdas(), delta);
  if (c.format == "csv") {
    std::string text = "k,product\n";
    for (std::size_t k = 0; k < report.per_index_products.size(); ++k) {
      text += std::to_string(k + 1) + "," + format_double(report.per_index_products[k]) + "\n";
    }
    return {text, !report.satisfied};
  }
  Json out = carleson_to_json(report);
  out["lambdas"] = model_to_json(model)["lambdas"];
  return {dump(out), !report.satisfied};
}

Report cmd_spectral(const Common& c, double alpha, Index dim, bool rotate) {
  require_json(c, "spectral");
  const Tolerance tol = c.tolerance();
  const DiagonalModel model = load_model(c, alpha, dim);
  const Matrix t = model.operator_matrix();
  const Vector phi = generator(model);
  const Index certified = certified_depth(model.spectral_radius(), phi.squaredNorm(), c.tail);
  const Index depth = c.depth.value_or(certified);
  if (depth < 1) {
    throw Error(ErrorKind::kInvalidInput, "depth must be positive");
  }

  const Matrix s_closed = closed_form_frame_operator(model);
  const VectorFamily f = orbit(t, phi, depth, "spectral_orbit");
  const Matrix s_iter = frame_operator(f);
  const SpectralFactorization closed_eig = eigh(s_closed);
  const FrameReport truncated = frame_bounds(f, tol);
  const Matrix recovered = candidate_operator(f, canonical_dual(f, tol), tol);
  const Matrix conjugated = inv_sqrt_psd(s_closed, tol) * t * sqrt_psd(s_closed, tol);
  const double rho = model.spectral_radius();

  Json out;
  out["lambdas"] = model_to_json(model)["lambdas"];
  out["certified_depth"] = certified;
  out["depth"] = depth;
  out["tail_bound"] = phi.squaredNorm() * std::pow(rho, 2.0 * static_cast<double>(depth)) / (1.0 - rho * rho);
  out["closed_form"] = {{"A", closed_eig.eigenvalues(closed_eig.eigenvalues.size() - 1)}, {"B", closed_eig.eigenvalues(0)}};
  out["truncated"] = frame_report_to_json(truncated);
  out["closed_vs_iterated"] = operator_norm(s_closed - s_iter);
  out["recovery_error"] = operator_norm(recovered - t);
  if (truncated.is_frame) {
    const NormSandwich sandwich = norm_sandwich(f, recovered, tol, NormRegime::kCertifiedTail);
    out["norm_sandwich"] = {{"norm_T", sandwich.norm_t},
                            {"upper", sandwich.upper},
                            {"lower", 1.0},
                            {"lower_holds", sandwich.lo_ok},
                            {"upper_holds", sandwich.hi_ok},
                            {"regime", "certified_tail"}};
  }
  out["tight_conjugate_norm"] = operator_norm(conjugated);
  if (rotate) {
    const Matrix q = random_unitary(model.dim(), c.seed);
    const FrameReport rotated = frame_bounds(orbit(q * t * q.adjoint(), q * phi, depth), tol);
    out["basis_change"] = {{"seed", c.seed},
                           {"frame", frame_report_to_json(rotated)},
                           {"bound_difference", std::max(std::abs(rotated.lower_bound_a - truncated.lower_bound_a),
                                                         std::abs(rotated.upper_bound_b - truncated.upper_bound_b))}};
  }
  return {dump(out), !truncated.is_frame};
}

Report cmd_structure(const Common& c, Index l, Index max_n, Index remove_n, Index remove_ell) {
  require_json(c, "structure");
  const Tolerance tol = c.tolerance();
  const VectorFamily f = family_from_json(read_json(c.input));
  const RepresentabilityVerdict verdict = assess_representability(f, tol);
  Json out;
  out["representable"] = verdict.representable;
  const ChainReport chain = chain_report(verdict.candidate_t, tol);
  out["chain"] = chain_to_json(chain);
  bool negative = !verdict.representable;
  if (verdict.representable) {
    const Index n = tail_stabilization_index(f, verdict.candidate_t, l, max_n, tol);
    out["stabilization_index"] = n;
    if (n >= 0) {
      const TailSpaceReport report = tail_space_report(f, verdict.candidate_t, n, l, tol);
      out["tail_space"] = tail_space_to_json(report);
      const TailMapProperties props = surjectivity_injectivity_on_tail(verdict.candidate_t, report.v_basis, tol);
      out["tail_map"] = {{"invariant", props.invariant},
                         {"surjective", props.surjective},
                         {"injective", props.injective}};
    } else {
      out["tail_space"] = nullptr;
      negative = true;
    }
  }
  if (remove_ell > 0) {
    const FrameReport removed = block_removal_check(f, remove_n, remove_ell, tol);
    out["block_removal"] = {{"N", remove_n}, {"ell", remove_ell}, {"frame", frame_report_to_json(removed)}};
  }
  return {dump(out), negative};
}

Report cmd_swap(const Common& c, Index l1, Index l2) {
  require_json(c, "swap");
  const Tolerance tol = c.tolerance();
  const VectorFamily f = family_from_json(read_json(c.input));
  const SwapOutcome outcome = swap_experiment(f, l1, l2, tol);
  Json out = swap_to_json(outcome);
  out["max_norm"] = f.max_norm();
  return {dump(out), !outcome.verdict.representable};
}

Report cmd_perturb(const Common& c, double alpha, Index dim, Index subspace, Index samples, double fraction) {
  require_json(c, "perturb");
  const Tolerance tol = c.tolerance();
  if (subspace < 1 || subspace > dim) {
    throw Error(ErrorKind::kInvalidInput, "--subspace must lie in 1..dim");
  }
  if (samples < 1 || !(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "need --samples >= 1 and --fraction in (0, 1]");
  }
  const DiagonalModel model = load_model(c, alpha, dim);
  const Index d = model.dim();
  if (subspace > d) {
    throw Error(ErrorKind::kInvalidInput, "--subspace exceeds the model dimension");
  }
  const Matrix v = Matrix::Identity(d, subspace);
  const PerturbationSetup setup = c.depth ? fixed_depth_setup(model.operator_matrix(), generator(model), v, *c.depth, tol)
                                          : certified_setup(model.operator_matrix(), generator(model), v, c.tail, tol);

  std::mt19937_64 rng(c.seed);
  const double scale = 1.0 / std::sqrt(1.0 - setup.mu * setup.mu);
  Json rows = Json::array();
  bool all_ok = true;
  for (Index k = 0; k < samples; ++k) {
    Vector direction = v * random_complex_matrix(subspace, 1, rng).col(0);
    direction.normalize();
    const double size = fraction * setup.radius * static_cast<double>(k + 1) / static_cast<double>(samples);
    const Vector phi_tilde = size * direction;
    const Index depth = perturbed_depth(setup, phi_tilde, c.tail);
    const FrameReport report = perturbed_orbit_test(setup, phi_tilde, c.tail, tol);
    const double margin = std::sqrt(setup.a) - phi_tilde.norm() * scale;
    const double bound = margin * margin;
    const double energy = perturbation_energy(setup, phi_tilde, depth, tol);
    const double energy_bound = phi_tilde.squaredNorm() * scale * scale;
    const bool ok = report.is_frame && report.lower_bound_a >= bound - 1e-6 && energy <= energy_bound + 1e-8;
    all_ok = all_ok && ok;
    rows.push_back({{"norm", phi_tilde.norm()},
                    {"depth", depth},
                    {"is_frame", report.is_frame},
                    {"A", report.lower_bound_a},
                    {"A_bound", bound},
                    {"energy", energy},
                    {"energy_bound", energy_bound},
                    {"ok", ok}});
  }
  Json out;
  out["lambdas"] = model_to_json(model)["lambdas"];
  out["subspace_dim"] = subspace;
  out["mu"] = setup.mu;
  out["A"] = setup.a;
  out["radius"] = setup.radius;
  out["depth"] = setup.depth;
  out["samples"] = std::move(rows);
  out["all_ok"] = all_ok;
  return {dump(out), !all_ok};
}

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> dims;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(item, &used);
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
      dims.push_back(static_cast<Index>(value));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidInput, "--dims must be a comma-separated list of integers");
    }
  }
  return dims;
}

Report cmd_trend(const Common& c, const std::string& experiment, const std::string& dims_text, Index j,
                 double base, double alpha, double epsilon) {
  const Tolerance tol = c.tolerance();
  const std::vector<Index> dims = parse_dims(dims_text);
  if (experiment == "shrink") {
    const std::vector<ShrinkTrendPoint> points = shrink_trend(alpha, epsilon, dims, c.tail, tol);
    if (c.format == "csv") {
      std::string text = "d,depth,lower_bound,original_lower\n";
      for (const ShrinkTrendPoint& p : points) {
        text += std::to_string(p.dim) + "," + std::to_string(p.depth) + "," + format_double(p.lower_bound) + "," +
                format_double(p.original_lower) + "\n";
      }
      return {text, false};
    }
    Json rows = Json::array();
    for (const ShrinkTrendPoint& p : points) {
      rows.push_back({{"d", p.dim}, {"depth", p.depth}, {"lower_bound", p.lower_bound},
                      {"original_lower", p.original_lower}});
    }
    Json out;
    out["experiment"] = "shrink";
    out["alpha"] = alpha;
    out["epsilon"] = epsilon;
    out["points"] = std::move(rows);
    return {dump(out), false};
  }
  if (experiment != "compact") {
    throw Error(ErrorKind::kInvalidInput, "--experiment must be compact or shrink");
  }
  if (!(base > 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "--base must be > 1");
  }
  if (dims.empty()) {
    throw Error(ErrorKind::kInvalidInput, "--dims is empty");
  }
  std::vector<double> lambdas;
  for (Index k = 1; k <= *std::max_element(dims.begin(), dims.end()); ++k) {
    lambdas.push_back(std::pow(base, -static_cast<double>(k)));
  }
  const std::vector<TrendPoint> points = compact_nogo_trend(lambdas, j, dims, c.seed, c.tail, tol);
  if (c.format == "csv") {
    return {trend_to_csv(points), false};
  }
  Json rows = Json::array();
  for (const TrendPoint& p : points) {
    rows.push_back({{"d", p.dim}, {"J", p.generators}, {"depth", p.depth}, {"lower_bound", p.lower_bound},
                    {"upper_bound", p.upper_bound}});
  }
  Json out;
  out["experiment"] = "compact";
  out["base"] = base;
  out["seed"] = c.seed;
  out["points"] = std::move(rows);
  return {dump(out), false};
}

Report cmd_generate(const Common& c, const std::string& kind_name, GenerateParams params) {
  require_json(c, "generate");
  params.tail_tol = c.tail;
  const FamilyKind kind = parse_family_kind(kind_name);
  const GeneratedFamily generated = generate_family(kind, params, c.seed);
  Json out = family_to_json(generated.family);
  Json metadata;
  metadata["kind"] = std::string(family_kind_name(kind));
  metadata["seed"] = c.seed;
  if (generated.certified_depth) {
    metadata["certified_depth"] = *generated.certified_depth;
    metadata["alpha"] = params.alpha;
    metadata["tail_tol"] = params.tail_tol;
  }
  out["metadata"] = std::move(metadata);
  return {dump(out), false};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbit frame laboratory", "orbitframe"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  Common c;
  app.add_option("--input", c.input, "Input JSON (family or model)");
  app.add_option("--out", c.out, "Write the report here instead of stdout");
  app.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", c.seed, "Seed for every random draw");
  app.add_option("--tol-rank", c.tol_rank, "Relative rank threshold");
  app.add_option("--tol-res", c.tol_res, "Residual threshold");
  app.add_option("--depth", c.depth, "Orbit depth (overrides the certified depth)");
  app.add_option("--tail", c.tail, "Tail tolerance for certified depths");
  app.add_flag("--strict", c.strict, "Exit with 2 on a negative verdict");

  double alpha = 2.0;
  Index dim = 4;

  auto* analyze = app.add_subcommand("analyze", "Frame bounds of a family");

  std::string dual_path;
  auto* represent = app.add_subcommand("represent", "Decide representability by a bounded operator");
  represent->add_option("--dual", dual_path, "Use this dual instead of the canonical one");

  double delta = 1e-6;
  auto* carleson = app.add_subcommand("carleson", "Carleson products of a model");
  carleson->add_option("--alpha", alpha);
  carleson->add_option("--dim", dim);
  carleson->add_option("--delta", delta, "Threshold for the separation verdict");

  bool rotate = false;
  auto* spectral = app.add_subcommand("spectral", "Closed-form and truncated frame operators of a model");
  spectral->add_option("--alpha", alpha);
  spectral->add_option("--dim", dim);
  spectral->add_flag("--rotate", rotate, "Also run the model in a seeded random orthonormal basis");

  Index l = 2;
  Index max_n = 64;
  Index remove_n = 0;
  Index remove_ell = 0;
  auto* structure = app.add_subcommand("structure", "Chains and tail spaces of a representable family");
  structure->add_option("--L", l, "Number of tail shifts to compare");
  structure->add_option("--max-n", max_n, "Largest start index searched");
  structure->add_option("--remove-n", remove_n, "Block removal start N");
  structure->add_option("--remove-ell", remove_ell, "Block removal length ell");

  Index l1 = 0;
  Index l2 = 0;
  auto* swap = app.add_subcommand("swap", "Interchange two frame elements");
  swap->add_option("--l1", l1)->required();
  swap->add_option("--l2", l2)->required();

  Index subspace = 2;
  Index samples = 20;
  double fraction = 0.9;
  auto* perturb = app.add_subcommand("perturb", "Generator perturbations inside an invariant subspace");
  perturb->add_option("--alpha", alpha);
  perturb->add_option("--dim", dim);
  perturb->add_option("--subspace", subspace, "V = span{e_1, ..., e_m}");
  perturb->add_option("--samples", samples);
  perturb->add_option("--fraction", fraction, "Largest perturbation as a fraction of the radius");

  std::string experiment = "compact";
  std::string dims_text = "4,8,16,32";
  Index j = 2;
  double base = 2.0;
  double epsilon = 0.1;
  auto* trend = app.add_subcommand("trend", "Lower frame bounds across model dimensions");
  trend->add_option("--experiment", experiment)->check(CLI::IsMember({"compact", "shrink"}));
  trend->add_option("--dims", dims_text);
  trend->add_option("--J", j, "Number of generators");
  trend->add_option("--base", base, "lambda_k = base^-k");
  trend->add_option("--alpha", alpha);
  trend->add_option("--epsilon", epsilon);

  std::string kind = "onb";
  GenerateParams params;
  auto* generate = app.add_subcommand("generate", "Write a named family as JSON");
  generate->add_option("--kind", kind)->required();
  generate->add_option("--dim", params.dim);
  generate->add_option("--alpha", params.alpha);
  generate->add_option("--basis-dim", params.basis_dim);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    Report report;
    if (*analyze) {
      report = cmd_analyze(c);
    } else if (*represent) {
      report = cmd_represent(c, dual_path);
    } else if (*carleson) {
      report = cmd_carleson(c, alpha, dim, delta);
    } else if (*spectral) {
      report = cmd_spectral(c, alpha, dim, rotate);
    } else if (*structure) {
      report = cmd_structure(c, l, max_n, remove_n, remove_ell);
    } else if (*swap) {
      report = cmd_swap(c, l1, l2);
    } else if (*perturb) {
      report = cmd_perturb(c, alpha, dim, subspace, samples, fraction);
    } else if (*trend) {
      report = cmd_trend(c, experiment, dims_text, j, base, alpha, epsilon);
    } else {
      report = cmd_generate(c, kind, params);
    }

    if (c.out.empty()) {
      out << report.text;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      file << report.text;
      if (!file) {
        throw Error(ErrorKind::kInvalidInput, "cannot write '" + c.out + "'");
      }
    }
    return c.strict && report.negative ? kExitNegative : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace orbitframe
