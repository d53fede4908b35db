#pragma once

// JSON and CSV mirrors of the library's inputs and reports.
//
//   VectorFamily: {"dim": int, "label": string, "vectors": [[[re, im], ...], ...]}
//   DiagonalModel: {"lambdas": [[re, im], ...]}
//   Verdict: {"representable", "max_shift_residual", "kernel_invariance_residual",
//             "norm_T", "norm_lo", "norm_hi", "residuals"}
//
// Non-finite numbers (e.g. an unbounded norm_hi) are written as null.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orbitframe/frame.hpp"
#include "orbitframe/perturbation.hpp"
#include "orbitframe/representability.hpp"
#include "orbitframe/spectral_model.hpp"
#include "orbitframe/structure.hpp"

namespace orbitframe {

using Json = nlohmann::ordered_json;

/// Parses `text`; syntax errors become InvalidInput with "source:line:column".
Json parse_json_text(std::string_view text, std::string_view source);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, std::string_view where);

Json family_to_json(const VectorFamily& f);
VectorFamily family_from_json(const Json& j);

Json model_to_json(const DiagonalModel& model);
DiagonalModel model_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);

Json frame_report_to_json(const FrameReport& r);
Json verdict_to_json(const RepresentabilityVerdict& v);
Json carleson_to_json(const CarlesonReport& r);
Json chain_to_json(const ChainReport& r);
Json tail_space_to_json(const TailSpaceReport& r);
Json swap_to_json(const SwapOutcome& s);

/// Shortest round-trip decimal form, independent of the C++ locale.
std::string format_double(double x);

/// Header "d,J,depth,lower_bound,upper_bound" and one row per point.
std::string trend_to_csv(const std::vector<TrendPoint>& points);

}  // namespace orbitframe
