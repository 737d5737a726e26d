#include "tailbounds/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace tailbounds {

namespace {

json encode_extended(double value) {
  if (std::isinf(value)) return json(value > 0 ? "inf" : "-inf");
  return json(value);
}

double decode_extended(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw json::type_error::create(302, "expected a number or \"inf\"", &j);
  }
  return j.get<double>();
}

}  // namespace

json to_json(const TailEstimate& estimate) {
  json j = json::object();
  j["hits"] = estimate.hits;
  j["trials"] = estimate.trials;
  j["p_hat"] = estimate.p_hat;
  j["ci_low"] = estimate.ci_low;
  j["ci_high"] = estimate.ci_high;
  j["seed"] = estimate.seed;
  j["event_descriptor"] = estimate.event_descriptor;
  return j;
}

TailEstimate tail_estimate_from_json(const json& j) {
  TailEstimate e;
  e.hits = j.at("hits").get<std::int64_t>();
  e.trials = j.at("trials").get<std::int64_t>();
  e.p_hat = j.at("p_hat").get<double>();
  e.ci_low = j.at("ci_low").get<double>();
  e.ci_high = j.at("ci_high").get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.event_descriptor = j.at("event_descriptor").get<std::string>();
  return e;
}

json to_json(const BoundReport& report) {
  json j = json::object();
  j["theorem"] = report.theorem;
  j["inputs"] = report.inputs;
  if (report.exponent) j["exponent"] = encode_extended(*report.exponent);
  j["bound_raw"] = report.bound_raw;
  j["bound_clamped"] = report.bound_clamped;
  if (report.exact) j["exact"] = *report.exact;
  if (report.mc_estimate) j["mc_estimate"] = to_json(*report.mc_estimate);
  json meta = json::object();
  for (const auto& [key, value] : report.metadata) meta[key] = value;
  j["metadata"] = meta;
  return j;
}

BoundReport bound_report_from_json(const json& j) {
  BoundReport r;
  r.theorem = j.at("theorem").get<std::string>();
  r.inputs = j.at("inputs");
  if (j.contains("exponent")) r.exponent = decode_extended(j.at("exponent"));
  r.bound_raw = j.at("bound_raw").get<double>();
  r.bound_clamped = j.at("bound_clamped").get<double>();
  if (j.contains("exact")) r.exact = j.at("exact").get<double>();
  if (j.contains("mc_estimate")) r.mc_estimate = tail_estimate_from_json(j.at("mc_estimate"));
  for (const auto& [key, value] : j.at("metadata").items()) {
    r.metadata.emplace_back(key, value.get<std::string>());
  }
  return r;
}

std::string format_full(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace tailbounds
