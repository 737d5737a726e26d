#pragma once

// BoundReport: one comparison row tying together a theorem's inputs, its
// exponent and bound values, and (when available) the exact probability
// and a Monte Carlo estimate. Serialized as a JSON object whose keys are
// exactly the field names; absent optional fields are omitted, and infinite
// exponents are encoded as the string "inf".

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tailbounds/simulate.hpp"

namespace tailbounds {

using json = nlohmann::ordered_json;

struct BoundReport {
  std::string theorem;  // "T1".."T5"
  json inputs = json::object();
  std::optional<double> exponent;
  double bound_raw = 0.0;
  double bound_clamped = 0.0;
  std::optional<double> exact;
  std::optional<TailEstimate> mc_estimate;
  std::vector<std::pair<std::string, std::string>> metadata;
};

json to_json(const TailEstimate& estimate);
TailEstimate tail_estimate_from_json(const json& j);

json to_json(const BoundReport& report);
BoundReport bound_report_from_json(const json& j);

/// Full-precision numeric formatting for CSV cells: %.17g, with "inf" for
/// infinities.
std::string format_full(double value);

/// RFC-4180 quoting: the field is quoted only when it contains a comma,
/// quote, or newline.
std::string csv_quote(const std::string& field);

}  // namespace tailbounds
