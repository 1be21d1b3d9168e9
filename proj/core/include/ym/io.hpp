#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ym/convergence.hpp"
#include "ym/graph.hpp"
#include "ym/measure.hpp"
#include "ym/test_functions.hpp"
#include "ym/transport.hpp"
#include "ym/varifold.hpp"
#include "ym/young.hpp"

namespace ym::io {

using nlohmann::json;

// JSON schemas. Loaders validate shape and reject NaN/infinity and
// negative weights with ParseError.
//
//   measure   {"dim": k, "atoms": [{"x": [k floats], "w": w}, ...]}
//   young     {"carrier_dim": .., "fiber_dim": .., "sites":
//                [{"x": [..], "w": .., "fiber": <measure>}, ...]}
//   graph     {"x_dim": .., "y_dim": .., "atoms":
//                [{"x": [..], "y": [..], "w": ..}, ...]}
//   varifold  {"n": .., "m": .., "atoms":
//                [{"x": [n floats], "proj": [n*n floats row-major],
//                  "w": ..}, ...]}
//   polyline  {"vertices": [[..], ..], "multiplicities": [..],
//              "closed": bool}
//   battery   [{"kind": .., "parameters": {..}, "label": ..}, ...]

json to_json(const DiscreteMeasure& mu);
json to_json(const YoungFunction& f);
json to_json(const GraphMeasure& gamma);
json to_json(const DiscreteVarifold& v);
json to_json(const PolylineVarifold& p);
json to_json(const Battery& battery);

DiscreteMeasure measure_from_json(const json& j);
YoungFunction young_from_json(const json& j);
GraphMeasure graph_from_json(const json& j);
DiscreteVarifold varifold_from_json(const json& j);
PolylineVarifold polyline_from_json(const json& j);
Battery battery_from_json(const json& j);

json report_to_json(const ConvergenceReport& report);
json report_to_json(const PairsReport& report);
json tightness_to_json(const TightnessProfile& profile);

/// Fixed 17-significant-digit decimal formatting used by every CSV cell.
std::string format_double(double v);

/// CSV emission. Columns:
///   plan       source_index,target_index,flow,cost_contribution
///   report     step,weak_deviation,moment_gap,w1,verdict
///   pairs      step,varifold_deviation,lifted_deviation,base_deviation
///   tightness  s,T(s),verdict
std::string plan_to_csv(const TransportPlan& plan);
std::string report_to_csv(const ConvergenceReport& report);
std::string pairs_to_csv(const PairsReport& report);
std::string tightness_to_csv(const TightnessProfile& profile);

/// Parses a file as JSON; wraps stream and syntax failures in ParseError.
json load_json_file(const std::filesystem::path& path);

/// Writes via a temporary file in the same directory plus an atomic
/// rename, so failed runs leave no partial outputs.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace ym::io
