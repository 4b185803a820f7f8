// Copyright 2026 The facmech Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON views of results. Non-finite numbers become the strings "inf",
// "-inf" and "nan" so the output stays valid JSON.

#ifndef FACMECH_REPORT_JSON_HPP_
#define FACMECH_REPORT_JSON_HPP_

#include <cmath>
#include <string>

#include "json.hpp"

#include "facmech/instances.hpp"
#include "facmech/model.hpp"
#include "facmech/verification.hpp"

namespace facmech {

using ojson = nlohmann::ordered_json;

inline ojson json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

// Inverse of json_number; accepts the string spellings.
inline double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw ParseError("expected a number or \"inf\"");
}

inline ojson to_json(const AgentReport& a) {
  return {{"type", type_label(a.type())},
          {"locations", std::vector<double>(a.locations().begin(), a.locations().end())}};
}

inline ojson to_json(const Lottery& lottery) {
  ojson out = ojson::array();
  for (const auto& o : lottery.support()) {
    out.push_back({{"location", o.location}, {"probability", o.probability}});
  }
  return out;
}

inline ojson to_json(const DeviationWitness& w) {
  return {{"agent_index", w.agent_index},
          {"true_report", to_json(w.true_report)},
          {"misreport", to_json(w.misreport)},
          {"truthful_benefit", w.truthful_benefit},
          {"deviating_benefit", w.deviating_benefit},
          {"gain", w.gain}};
}

inline ojson to_json(const ProfileWitness& w) {
  ojson j = to_json(w.witness);
  j["profile"] = profile_to_json(w.profile);
  return j;
}

inline ojson to_json(const RatioSearchResult& r) {
  ojson j{{"worst_ratio", json_number(r.worst_ratio)},
          {"worst_index", r.worst_index},
          {"evaluated", r.evaluated},
          {"opt_value", r.worst_opt_value},
          {"mechanism_value", r.worst_mechanism_value}};
  j["worst_instance"] =
      r.worst_instance ? profile_to_json(*r.worst_instance) : ojson(nullptr);
  return j;
}

inline ojson to_json(const ReflectionForm& f) {
  ojson j{{"kind", to_string(f.kind)},
          {"alpha", f.alpha},
          {"beta", f.beta},
          {"reflection_point", f.reflection_point},
          {"grid_resolution", f.grid_resolution}};
  if (f.offending_points) {
    j["offending_points"] = {f.offending_points->first, f.offending_points->second};
  }
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

inline ojson to_json(const MidpointCheckReport& r) {
  ojson j{{"passed", r.passed},
          {"range_points", r.range_points},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"midpoint", r.midpoint},
          {"profiles", r.profiles},
          {"pairs_scanned", r.pairs_scanned}};
  if (r.violating_pair) {
    j["violating_pair"] = {{"x", profile_to_json(r.violating_pair->first)},
                           {"y", profile_to_json(r.violating_pair->second)}};
  }
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

inline ojson to_json(const CertificateReport& r) {
  ojson m = ojson::object();
  for (const auto& [k, v] : r.measurements) m[k] = json_number(v);
  ojson checks = ojson::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", json_number(c.lhs)},
                      {"rhs", json_number(c.rhs)},
                      {"holds", c.holds}});
  }
  return {{"certificate", r.name},
          {"mechanism", r.mechanism},
          {"claimed_c", r.claimed_c},
          {"measurements", std::move(m)},
          {"checks", std::move(checks)},
          {"sp_holds", r.sp_holds},
          {"consistent", r.consistent},
          {"verdict", r.verdict}};
}

inline ojson to_json(const MonotonicityViolation& v) {
  return {{"sum_right", v.sum_right},
          {"sum_left", v.sum_left},
          {"step", v.step},
          {"p_base", v.p_base},
          {"p_shifted", v.p_shifted}};
}

}  // namespace facmech

#endif  // FACMECH_REPORT_JSON_HPP_
