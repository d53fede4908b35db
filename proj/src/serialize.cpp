#include "orbitframe/serialize.hpp"

#include <charconv>
#include <cmath>
#include <locale>
#include <sstream>
#include <string>

#include "orbitframe/error.hpp"

namespace orbitframe {

namespace {

Json number(double x) {
  if (!std::isfinite(x)) {
    return nullptr;
  }
  return x;
}

// Byte offset -> 1-based line and column.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const Json& field(const Json& j, const char* key, std::string_view where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::kInvalidInput, std::string(where) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

}  // namespace

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte is one past the offending character.
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorKind::kInvalidInput, std::string(source) + ":" + std::to_string(line) + ":" +
                                              std::to_string(column) + ": malformed JSON");
  }
}

Json complex_to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Complex complex_from_json(const Json& j, std::string_view where) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::kInvalidInput, std::string(where) + ": expected a number or [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json family_to_json(const VectorFamily& f) {
  Json vectors = Json::array();
  for (Index k = 0; k < f.size(); ++k) {
    Json v = Json::array();
    for (Index i = 0; i < f.dim(); ++i) {
      v.push_back(complex_to_json(f.columns()(i, k)));
    }
    vectors.push_back(std::move(v));
  }
  Json out;
  out["dim"] = f.dim();
  out["label"] = f.label();
  out["vectors"] = std::move(vectors);
  return out;
}

VectorFamily family_from_json(const Json& j) {
  const Json& vectors = field(j, "vectors", "family");
  if (!vectors.is_array() || vectors.empty()) {
    throw Error(ErrorKind::kInvalidInput, "family: 'vectors' must be a non-empty array");
  }
  Index dim = -1;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) {
      throw Error(ErrorKind::kInvalidInput, "family: 'dim' must be an integer");
    }
    dim = j["dim"].get<Index>();
  }
  if (dim < 0) {
    dim = static_cast<Index>(vectors[0].is_array() ? vectors[0].size() : 0);
  }
  Matrix columns(dim, static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const Json& v = vectors[k];
    const std::string where = "family: vector " + std::to_string(k + 1);
    if (!v.is_array() || static_cast<Index>(v.size()) != dim) {
      throw Error(ErrorKind::kInvalidInput, where + " does not have " + std::to_string(dim) + " entries");
    }
    for (Index i = 0; i < dim; ++i) {
      columns(i, static_cast<Index>(k)) = complex_from_json(v[static_cast<std::size_t>(i)], where);
    }
  }
  std::string label;
  if (j.contains("label") && j["label"].is_string()) {
    label = j["label"].get<std::string>();
  }
  return VectorFamily(std::move(columns), std::move(label));
}

Json model_to_json(const DiagonalModel& model) {
  Json lambdas = Json::array();
  for (const Complex& z : model.lambdas()) {
    lambdas.push_back(complex_to_json(z));
  }
  Json out;
  out["lambdas"] = std::move(lambdas);
  return out;
}

DiagonalModel model_from_json(const Json& j) {
  const Json& lambdas = field(j, "lambdas", "model");
  if (!lambdas.is_array()) {
    throw Error(ErrorKind::kInvalidInput, "model: 'lambdas' must be an array");
  }
  std::vector<Complex> values;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    values.push_back(complex_from_json(lambdas[k], "model: lambda " + std::to_string(k + 1)));
  }
  return DiagonalModel(std::move(values));
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json frame_report_to_json(const FrameReport& r) {
  Json out;
  out["A"] = number(r.lower_bound_a);
  out["B"] = number(r.upper_bound_b);
  out["is_frame"] = r.is_frame;
  out["is_tight"] = r.is_tight;
  out["is_riesz_basis"] = r.is_riesz_basis;
  out["excess"] = r.excess;
  out["span_dim"] = r.span_dim;
  return out;
}

Json verdict_to_json(const RepresentabilityVerdict& v) {
  Json residuals = Json::array();
  for (double x : v.shift_residuals) {
    residuals.push_back(number(x));
  }
  Json out;
  out["representable"] = v.representable;
  out["max_shift_residual"] = number(v.max_shift_residual);
  out["kernel_invariance_residual"] = number(v.kernel_invariance_residual);
  out["norm_T"] = number(v.norm_t);
  out["norm_lo"] = number(v.norm_lo);
  out["norm_hi"] = number(v.norm_hi);
  out["residuals"] = std::move(residuals);
  return out;
}

Json carleson_to_json(const CarlesonReport& r) {
  Json products = Json::array();
  for (double x : r.per_index_products) {
    products.push_back(number(x));
  }
  Json out;
  out["infimum"] = number(r.infimum);
  out["satisfied"] = r.satisfied;
  out["has_duplicates"] = r.has_duplicates;
  out["per_index_products"] = std::move(products);
  return out;
}

Json chain_to_json(const ChainReport& r) {
  Json out;
  out["image_ranks"] = r.image_ranks;
  out["q_T"] = r.q_t;
  out["null_dims"] = r.null_dims;
  out["null_length"] = r.null_length;
  return out;
}

Json tail_space_to_json(const TailSpaceReport& r) {
  Json bounds = Json::array();
  for (const FrameBoundsPair& p : r.per_shift_frame_bounds) {
    bounds.push_back(Json::array({number(p.a), number(p.b)}));
  }
  Json out;
  out["N"] = r.start_index_n;
  out["V_dim"] = r.v_dim;
  out["codim"] = r.codim;
  out["stable"] = r.stable;
  out["per_shift_frame_bounds"] = std::move(bounds);
  return out;
}

Json swap_to_json(const SwapOutcome& s) {
  Json out;
  out["span_condition_holds"] = s.span_condition_holds;
  out["verdict"] = verdict_to_json(s.verdict);
  out["swapped"] = family_to_json(s.swapped);
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

std::string trend_to_csv(const std::vector<TrendPoint>& points) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "d,J,depth,lower_bound,upper_bound\n";
  for (const TrendPoint& p : points) {
    out << p.dim << ',' << p.generators << ',' << p.depth << ',' << format_double(p.lower_bound) << ','
        << format_double(p.upper_bound) << '\n';
  }
  return out.str();
}

}  // namespace orbitframe
