#pragma once

// JSON and text rendering of verdicts and counterexample reports.

#include <string>

#include <json.hpp>

#include "hml/conditions.hpp"
#include "hml/lab.hpp"
#include "hml/parallel.hpp"
#include "hml/restriction.hpp"

namespace hml {

using Json = nlohmann::ordered_json;

/// The fixed envelope every CLI report uses.
[[nodiscard]] Json make_report(const std::string& command, Json inputs, Json bounds, Json verdict, Json witnesses,
                               double timing_ms);

[[nodiscard]] Json to_json(const CounterexampleReport& r);
[[nodiscard]] Json to_json(const ConditionWitness& w);
[[nodiscard]] Json to_json(const ConditionVerdict& v);
[[nodiscard]] Json to_json(const SuiteReport& s);

/// Parses a report produced by to_json. Throws ParseError or
/// std::invalid_argument on malformed input.
[[nodiscard]] CounterexampleReport report_from_json(const Json& j);

[[nodiscard]] std::string render(const CounterexampleReport& r);
[[nodiscard]] std::string render(const ConditionVerdict& v);
[[nodiscard]] std::string render(const SuiteReport& s);

} // namespace hml
