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

// Named worst-case instances, seeded random profiles, and the JSON instance
// format:
//
//   {"interval": [lo, hi], "agents": [{"type": 1|2, "locations": [r, ...]}]}

#ifndef FACMECH_INSTANCES_HPP_
#define FACMECH_INSTANCES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "facmech/errors.hpp"
#include "facmech/model.hpp"

namespace facmech {

using ProfilePair = std::pair<Profile, Profile>;

namespace detail {

// ceil(q), except that q within 1e-9 (relative) of an integer counts as that
// integer. Keeps counts like ceil(11 / 0.1) from picking up an extra unit
// from binary rounding of the step.
inline std::int64_t robust_ceil(double q) {
  const double r = std::nearbyint(q);
  if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q))) {
    return static_cast<std::int64_t>(r);
  }
  return static_cast<std::int64_t>(std::ceil(q));
}

inline std::vector<AgentReport> type1_agents(const std::vector<double>& xs) {
  std::vector<AgentReport> out;
  out.reserve(xs.size());
  for (double x : xs) out.emplace_back(AgentType::kType1, x);
  return out;
}

}  // namespace detail

// Half the agents at alpha and half at beta (x); then the alpha half moved to
// just left of the midpoint (y). A two-point-range mechanism that picks beta
// on x cannot move on y, and loses a factor close to 3 in maxisum.
inline ProfilePair gen_thm51(int n, double epsilon, double alpha, double beta,
                             Interval interval = Interval::unit_pair()) {
  if (n < 2 || n % 2 != 0) throw DomainError("gen_thm51 needs an even n >= 2");
  if (!(alpha < beta)) throw DomainError("gen_thm51 needs alpha < beta");
  if (!(epsilon > 0.0) || !(epsilon < (beta - alpha) / 2.0)) {
    throw DomainError("gen_thm51 needs 0 < epsilon < (beta - alpha) / 2");
  }
  interval.require_contains(alpha, "alpha");
  interval.require_contains(beta, "beta");
  const double shifted = (alpha + beta) / 2.0 - epsilon;
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i < n; ++i) {
    const bool low_half = i < n / 2;
    xs.push_back(low_half ? alpha : beta);
    ys.push_back(low_half ? shifted : beta);
  }
  return {Profile(interval, detail::type1_agents(xs)),
          Profile(interval, detail::type1_agents(ys))};
}

// One type-1 agent on each of the two range points.
inline Profile gen_thm52(double first, double second,
                         Interval interval = Interval::unit_pair()) {
  if (first == second) throw DomainError("gen_thm52 needs two distinct points");
  return Profile(interval, detail::type1_agents({first, second}));
}

inline double thm61_offset() { return 2.0 * std::sqrt(3.0) - 3.0; }

// x = (1 - a, 1 + a), y = (0, 1 + a) on [0, 2] with a = 2*sqrt(3) - 3.
inline ProfilePair gen_thm61() {
  const double a = thm61_offset();
  const Interval I = Interval::unit_pair();
  return {Profile(I, detail::type1_agents({1.0 - a, 1.0 + a})),
          Profile(I, detail::type1_agents({0.0, 1.0 + a}))};
}

// Type-1 agent at 1 and type-2 agent at 0 on [0, 2].
inline Profile gen_tightness_32() {
  return Profile(Interval::unit_pair(),
                 {AgentReport(AgentType::kType1, 1.0),
                  AgentReport(AgentType::kType2, 0.0)});
}

struct Thm62Instance {
  Profile x;
  Profile x_prime;
  double M = 0.0;
  double epsilon = 0.0;
  // Indices (into both profiles) of the endpoint cluster that x_prime spreads
  // out over the points a*epsilon next to that endpoint.
  std::vector<std::size_t> moved_cluster;
  // false: the cluster at 0 moves into [0, 1); true: the cluster at M+2
  // moves into (M+1, M+2].
  bool mirrored = false;
};

// Interval [0, M+2] with n = 2*ceil((M+1)/eps) + 4 type-1 agents: one at 1,
// one at M+1, one at every 1 + a*eps strictly between them, and the rest
// split evenly between the endpoints (an odd leftover goes to (M+2)/2).
inline Thm62Instance gen_thm62(double M, double epsilon, bool mirrored = false) {
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("gen_thm62 needs M > 0");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw DomainError("gen_thm62 needs 0 < epsilon < 1");
  }
  const Interval I(0.0, M + 2.0);
  const std::int64_t n = 2 * detail::robust_ceil((M + 1.0) / epsilon) + 4;
  const std::int64_t interior = detail::robust_ceil(M / epsilon) - 1;

  std::vector<double> xs{1.0, M + 1.0};
  for (std::int64_t a = 1; a <= interior; ++a) {
    xs.push_back(1.0 + static_cast<double>(a) * epsilon);
  }
  std::int64_t rest = n - static_cast<std::int64_t>(xs.size());
  if (rest < 2) throw DomainError("gen_thm62: too few agents left for the endpoints");
  if (rest % 2 != 0) {
    xs.push_back((M + 2.0) / 2.0);
    --rest;
  }
  const std::size_t low_begin = xs.size();
  xs.insert(xs.end(), static_cast<std::size_t>(rest / 2), 0.0);
  const std::size_t high_begin = xs.size();
  xs.insert(xs.end(), static_cast<std::size_t>(rest / 2), M + 2.0);

  const std::size_t begin = mirrored ? high_begin : low_begin;
  const std::size_t end = mirrored ? xs.size() : high_begin;
  const auto spots = static_cast<std::size_t>(detail::robust_ceil(1.0 / epsilon));
  if (end - begin < spots) {
    throw DomainError("gen_thm62: endpoint cluster smaller than the spread grid");
  }
  std::vector<double> xps = xs;
  Thm62Instance inst{Profile(I, detail::type1_agents(xs)),
                     Profile(I, detail::type1_agents(xs)), M, epsilon, {},
                     mirrored};
  for (std::size_t j = 0; j < spots; ++j) {
    const double offset = static_cast<double>(j) * epsilon;
    xps[begin + j] = mirrored ? (M + 2.0) - offset : offset;
  }
  for (std::size_t i = begin; i < end; ++i) inst.moved_cluster.push_back(i);
  inst.x_prime = Profile(I, detail::type1_agents(xps));
  return inst;
}

// Locations uniform on the interval, k uniform on 1..k_max, each agent
// type 2 with probability type_mix.
inline Profile random_profile(std::size_t n, double type_mix, std::size_t k_max,
                              Interval interval, std::uint64_t seed) {
  if (n < 1) throw DomainError("random_profile needs n >= 1");
  if (!(type_mix >= 0.0 && type_mix <= 1.0)) {
    throw DomainError("random_profile needs type_mix in [0, 1]");
  }
  if (k_max < 1) throw DomainError("random_profile needs k_max >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution near(type_mix);
  std::uniform_int_distribution<std::size_t> count(1, k_max);
  std::uniform_real_distribution<double> where(interval.lo(), interval.hi());
  std::vector<AgentReport> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AgentType t = near(rng) ? AgentType::kType2 : AgentType::kType1;
    std::vector<double> xs(count(rng));
    for (double& x : xs) x = where(rng);
    agents.emplace_back(t, std::move(xs));
  }
  return Profile(interval, std::move(agents));
}

// Per-instance seed for searches that must not depend on worker count.
inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json profile_to_json(const Profile& profile) {
  nlohmann::ordered_json j;
  j["interval"] = {profile.interval().lo(), profile.interval().hi()};
  j["agents"] = nlohmann::ordered_json::array();
  for (const auto& a : profile.agents()) {
    nlohmann::ordered_json agent;
    agent["type"] = type_label(a.type());
    agent["locations"] =
        std::vector<double>(a.locations().begin(), a.locations().end());
    j["agents"].push_back(std::move(agent));
  }
  return j;
}

namespace detail {

inline double json_real(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field + ": expected a number");
  return v.get<double>();
}

}  // namespace detail

inline Profile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  if (!j.contains("interval")) throw ParseError("instance: missing field 'interval'");
  if (!j.contains("agents")) throw ParseError("instance: missing field 'agents'");
  const auto& iv = j["interval"];
  if (!iv.is_array() || iv.size() != 2) {
    throw ParseError("interval: expected [lo, hi]");
  }
  const double lo = detail::json_real(iv[0], "interval[0]");
  const double hi = detail::json_real(iv[1], "interval[1]");
  std::optional<Interval> interval;
  try {
    interval.emplace(lo, hi);
  } catch (const DomainError& e) {
    throw ParseError(std::string("interval: ") + e.what());
  }
  const auto& agents_json = j["agents"];
  if (!agents_json.is_array() || agents_json.empty()) {
    throw ParseError("agents: expected a nonempty array");
  }
  std::vector<AgentReport> agents;
  for (std::size_t i = 0; i < agents_json.size(); ++i) {
    const std::string at = "agents[" + std::to_string(i) + "]";
    const auto& a = agents_json[i];
    if (!a.is_object() || !a.contains("type") || !a.contains("locations")) {
      throw ParseError(at + ": expected {\"type\": ..., \"locations\": [...]}");
    }
    if (!a["type"].is_number_integer()) throw ParseError(at + ".type: expected 1 or 2");
    const auto label = a["type"].get<std::int64_t>();
    if (label != 1 && label != 2) throw ParseError(at + ".type: expected 1 or 2");
    const auto& locs = a["locations"];
    if (!locs.is_array() || locs.empty()) {
      throw ParseError(at + ".locations: expected a nonempty array");
    }
    std::vector<double> xs;
    for (std::size_t q = 0; q < locs.size(); ++q) {
      const std::string field = at + ".locations[" + std::to_string(q) + "]";
      const double x = detail::json_real(locs[q], field);
      if (!interval->contains(x)) {
        throw ParseError(field + ": location " + detail::fmt_real(x) +
                         " lies outside [" + detail::fmt_real(lo) + ", " +
                         detail::fmt_real(hi) + "]");
      }
      xs.push_back(x);
    }
    agents.emplace_back(agent_type_from_label(static_cast<int>(label)),
                        std::move(xs));
  }
  return Profile(*interval, std::move(agents));
}

inline Profile parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // The library message already names the line and column.
    throw ParseError(e.what());
  }
  return profile_from_json(j);
}

inline void save_instance(const Profile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << profile_to_json(profile).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path);
}

inline Profile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace facmech

#endif  // FACMECH_INSTANCES_HPP_
