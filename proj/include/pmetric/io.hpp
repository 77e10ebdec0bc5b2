#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pmetric/instance.hpp"
#include "pmetric/metrics.hpp"

namespace pmetric::io {

// Every document is a JSON object with "format": 1. Scalars are JSON
// integers or strings of the form "p" / "p/q". Configurations are keyed by
// their comma-joined point labels, e.g. "0,1".

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Malformed document: bad JSON, wrong types, unknown format version,
/// malformed scalars, unreadable file.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

/// Indented JSON with scalar arrays kept on one line, plus a final newline.
std::string to_text(const Json& j);

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j, std::string_view where);

/// Instance documents: {"format", "sites": [{"name", "points", "metric"}],
/// "mu": {label: mass}, "nu": {label: mass}}.
RawInstance parse_instance(std::string_view text);
Json instance_json(const Instance& instance);
std::string write_instance(const Instance& instance);

/// Parses and validates; throws ParseError or InstanceError.
Instance load_instance(std::string_view text);

/// Function documents: {"format", "values": {label: value}}; missing
/// configurations are 0. Unknown labels throw InstanceError.
FunctionOnX parse_function(std::string_view text, const SpacePtr& space);
Json function_json(const FunctionOnX& f);

/// Weight documents: {"format", "weights": [e_0, e_1, ...]} in site order.
WeightVector parse_weights(std::string_view text, const ProductSpace& space);
Json weights_json(const WeightVector& e);

/// Cost documents: {"format", "cost": [[...], ...]} in configuration order.
CostOnPairs parse_cost(std::string_view text, const SpacePtr& space);
Json cost_json(const CostOnPairs& c);

/// Nonzero plan entries as {"x|y": mass}.
Json coupling_json(const Coupling& m);

}  // namespace pmetric::io
