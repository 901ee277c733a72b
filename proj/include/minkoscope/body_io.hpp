#pragma once

#include <string>

#include "json.hpp"
#include "minkoscope/caustic_duality.hpp"
#include "minkoscope/caustic_invariants.hpp"
#include "minkoscope/convex_body.hpp"
#include "minkoscope/counterexample.hpp"
#include "minkoscope/string_construction.hpp"

namespace mink {

/// JSON schema: {"variant": "disk"|"ellipse"|"polygon"|"lp"|"sampled", ...}.
/// Every parse failure throws invalid-argument with the offending field named
/// in the message.
nlohmann::json body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const nlohmann::json& j);

/// {"caustic": <body>, "metric": <body>, "length": L}
StringSpec string_spec_from_json(const nlohmann::json& j);

nlohmann::json duality_report_to_json(const DualityReport& rep);
nlohmann::json invariant_summary_to_json(const InvariantSummary& s);
nlohmann::json parameter_report_to_json(const ParameterReport& rep);
nlohmann::json caustic_report_to_json(const CausticReport& rep);
nlohmann::json counterexample_summary_to_json(const CounterexampleTable& table);

/// columns: n, q1, q2, p1, p2, r, s, seg_len
std::string trajectory_csv(const TrajectoryRecord& rec);
/// columns: n, p, eps, gap, limit_gap, violation, verdict
std::string counterexample_csv(const CounterexampleTable& table);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mink
