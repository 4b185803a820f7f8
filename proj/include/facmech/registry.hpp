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

// Mechanisms by name, as used on the command line.

#ifndef FACMECH_REGISTRY_HPP_
#define FACMECH_REGISTRY_HPP_

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "facmech/errors.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/oracle.hpp"

namespace facmech {

inline const std::vector<std::string>& mechanism_names() {
  static const std::vector<std::string> names{
      "constant-hi",     "constant-lo",          "det-hybrid",
      "det-hybrid-mutant", "det-multi",          "midpoint(alpha,beta,wL,wM,tau)",
      "opt-egalitarian", "opt-maxisum",          "rand-hybrid",
      "rand-multi-canonical"};
  return names;
}

namespace detail {

inline std::string joined_mechanism_names() {
  std::string out;
  for (const auto& n : mechanism_names()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

inline MidpointFamilyParams parse_midpoint_params(std::string_view name) {
  constexpr std::string_view kPrefix = "midpoint(";
  auto bad = [&]() {
    return UnknownMechanismError("cannot parse '" + std::string(name) +
                                 "'; expected midpoint(alpha,beta,wL,wM,tau)");
  };
  if (!name.starts_with(kPrefix) || !name.ends_with(")")) throw bad();
  std::string_view body = name.substr(kPrefix.size(), name.size() - kPrefix.size() - 1);
  double v[5];
  for (int i = 0; i < 5; ++i) {
    const std::size_t comma = body.find(',');
    if ((i < 4) != (comma != std::string_view::npos)) throw bad();
    std::string_view field = body.substr(0, comma);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v[i]);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw bad();
    }
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
  }
  return {v[0], v[1], v[2], v[3], v[4]};
}

}  // namespace detail

// Throws UnknownMechanismError listing the registered names, or
// ValidityError for midpoint parameters that break the family's constraints.
inline Mechanism make_mechanism(std::string_view name) {
  if (name == "det-hybrid") return det_hybrid_mechanism();
  if (name == "rand-hybrid") return rand_hybrid_mechanism();
  if (name == "det-multi") return det_multi_mechanism();
  if (name == "rand-multi-canonical") return rand_multi_canonical_mechanism();
  if (name == "opt-maxisum") return opt_mechanism(Objective::kMaxisum);
  if (name == "opt-egalitarian") return opt_mechanism(Objective::kEgalitarian);
  if (name == "constant-lo") return constant_endpoint_mechanism(false);
  if (name == "constant-hi") return constant_endpoint_mechanism(true);
  if (name == "det-hybrid-mutant") return det_hybrid_mutant();
  if (name.starts_with("midpoint(")) {
    return midpoint_score_mechanism(detail::parse_midpoint_params(name));
  }
  throw UnknownMechanismError("unknown mechanism '" + std::string(name) +
                              "'; known: " + detail::joined_mechanism_names());
}

}  // namespace facmech

#endif  // FACMECH_REGISTRY_HPP_
