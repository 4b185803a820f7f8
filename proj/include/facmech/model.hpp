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

// Shared vocabulary: intervals, agent reports, profiles, lotteries, and the
// benefit / social-benefit functions every mechanism and check is built on.
//
// A type-1 agent wants the facility far away and gets |x - y|. A type-2 agent
// wants it close and gets (hi - lo) - |x - y|, so both benefits live in
// [0, hi - lo]. An agent may control several locations; its benefit is the
// sum over them.

#ifndef FACMECH_MODEL_HPP_
#define FACMECH_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "facmech/errors.hpp"

namespace facmech {

namespace detail {

inline std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw DomainError("interval requires finite lo < hi, got [" +
                        detail::fmt_real(lo) + ", " + detail::fmt_real(hi) +
                        "]");
    }
  }

  // The model's canonical interval [0, 2].
  static Interval unit_pair() { return Interval(0.0, 2.0); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  double midpoint() const { return (lo_ + hi_) / 2.0; }
  bool contains(double y) const { return y >= lo_ && y <= hi_; }

  void require_contains(double y, std::string_view what) const {
    if (!contains(y)) {
      throw DomainError(std::string(what) + " " + detail::fmt_real(y) +
                        " lies outside [" + detail::fmt_real(lo_) + ", " +
                        detail::fmt_real(hi_) + "]");
    }
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

// Type1 agents want the facility far from them; Type2 agents want it near.
enum class AgentType { kType1 = 1, kType2 = 2 };

inline int type_label(AgentType t) { return static_cast<int>(t); }

inline AgentType agent_type_from_label(int label) {
  if (label == 1) return AgentType::kType1;
  if (label == 2) return AgentType::kType2;
  throw DomainError("agent type must be 1 or 2, got " + std::to_string(label));
}

class AgentReport {
 public:
  AgentReport(AgentType type, std::vector<double> locations)
      : type_(type), locations_(std::move(locations)) {
    if (locations_.empty()) {
      throw DomainError("agent report needs at least one location");
    }
    for (double x : locations_) {
      if (!std::isfinite(x)) throw DomainError("agent location is not finite");
    }
  }
  AgentReport(AgentType type, double location)
      : AgentReport(type, std::vector<double>{location}) {}

  AgentType type() const { return type_; }
  std::span<const double> locations() const { return locations_; }
  std::size_t k() const { return locations_.size(); }
  bool single() const { return locations_.size() == 1; }
  // Only meaningful when single().
  double location() const { return locations_.front(); }

  double mean_location() const {
    double sum = 0.0;
    for (double x : locations_) sum += x;
    return sum / static_cast<double>(locations_.size());
  }

  friend bool operator==(const AgentReport&, const AgentReport&) = default;

 private:
  AgentType type_;
  std::vector<double> locations_;
};

class Profile {
 public:
  Profile(Interval interval, std::vector<AgentReport> agents)
      : interval_(interval), agents_(std::move(agents)) {
    if (agents_.empty()) throw DomainError("profile needs at least one agent");
    for (const auto& a : agents_) {
      for (double x : a.locations()) interval_.require_contains(x, "agent location");
    }
  }

  // All agents single-location, of one type.
  static Profile single(Interval interval, AgentType type,
                        std::initializer_list<double> xs) {
    std::vector<AgentReport> agents;
    for (double x : xs) agents.emplace_back(type, x);
    return Profile(interval, std::move(agents));
  }

  const Interval& interval() const { return interval_; }
  std::span<const AgentReport> agents() const { return agents_; }
  const AgentReport& agent(std::size_t i) const { return agents_.at(i); }
  std::size_t n() const { return agents_.size(); }

  bool all_single_location() const {
    return std::all_of(agents_.begin(), agents_.end(),
                       [](const AgentReport& a) { return a.single(); });
  }
  bool all_type1() const {
    return std::all_of(agents_.begin(), agents_.end(), [](const AgentReport& a) {
      return a.type() == AgentType::kType1;
    });
  }

  Profile with_agent(std::size_t i, AgentReport report) const {
    std::vector<AgentReport> agents = agents_;
    agents.at(i) = std::move(report);
    return Profile(interval_, std::move(agents));
  }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  Interval interval_;
  std::vector<AgentReport> agents_;
};

struct Outcome {
  double location;
  double probability;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Finite-support distribution over facility locations. Construction merges
// equal locations, drops zero-probability points, and sorts by location.
class Lottery {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit Lottery(std::vector<Outcome> support) {
    double total = 0.0;
    for (const auto& o : support) {
      if (!std::isfinite(o.location)) {
        throw DomainError("lottery location is not finite");
      }
      if (!std::isfinite(o.probability) || o.probability < 0.0) {
        throw DomainError("lottery probability " +
                          detail::fmt_real(o.probability) + " is not in [0, 1]");
      }
      total += o.probability;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
      throw DomainError("lottery probabilities sum to " +
                        detail::fmt_real(total) + ", not 1");
    }
    std::stable_sort(support.begin(), support.end(),
                     [](const Outcome& a, const Outcome& b) {
                       return a.location < b.location;
                     });
    for (const auto& o : support) {
      if (o.probability == 0.0) continue;
      if (!support_.empty() && support_.back().location == o.location) {
        support_.back().probability += o.probability;
      } else {
        support_.push_back(o);
      }
    }
  }

  static Lottery point(double y) { return Lottery({{y, 1.0}}); }

  std::span<const Outcome> support() const { return support_; }
  bool is_point_mass() const { return support_.size() == 1; }
  // Location of a point mass.
  double point_location() const {
    if (!is_point_mass()) throw UnsupportedError("lottery is not a point mass");
    return support_.front().location;
  }

  double probability_of(double y) const {
    for (const auto& o : support_) {
      if (o.location == y) return o.probability;
    }
    return 0.0;
  }

  // P(a <= Y <= b).
  double probability_in(double a, double b) const {
    double p = 0.0;
    for (const auto& o : support_) {
      if (o.location >= a && o.location <= b) p += o.probability;
    }
    return p;
  }

  template <typename F>
  double expectation(F&& f) const {
    double e = 0.0;
    for (const auto& o : support_) e += o.probability * f(o.location);
    return e;
  }

  double expected_location() const {
    return expectation([](double y) { return y; });
  }

  void require_within(const Interval& interval) const {
    for (const auto& o : support_) {
      interval.require_contains(o.location, "lottery location");
    }
  }

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  std::vector<Outcome> support_;
};

enum class Objective { kMaxisum, kEgalitarian };

inline std::string_view to_string(Objective o) {
  return o == Objective::kMaxisum ? "maxisum" : "egalitarian";
}

inline std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "maxisum") return Objective::kMaxisum;
  if (s == "egalitarian") return Objective::kEgalitarian;
  return std::nullopt;
}

// Benefit of a single location x of the given type when the facility is at y.
inline double location_benefit(AgentType type, double x, double y,
                               const Interval& interval) {
  interval.require_contains(x, "agent location");
  interval.require_contains(y, "facility location");
  const double d = std::abs(x - y);
  return type == AgentType::kType1 ? d : interval.length() - d;
}

inline double benefit(const AgentReport& report, double y,
                      const Interval& interval) {
  if (!report.single()) {
    throw DomainError("benefit expects a single-location report; use multi_benefit");
  }
  return location_benefit(report.type(), report.location(), y, interval);
}

inline double multi_benefit(const AgentReport& report, double y,
                            const Interval& interval) {
  double total = 0.0;
  for (double x : report.locations()) {
    total += location_benefit(report.type(), x, y, interval);
  }
  return total;
}

inline double expected_benefit(const AgentReport& report, const Lottery& lottery,
                               const Interval& interval) {
  return lottery.expectation(
      [&](double y) { return multi_benefit(report, y, interval); });
}

inline double social_benefit(const Profile& profile, double y,
                             Objective objective) {
  const Interval& interval = profile.interval();
  interval.require_contains(y, "facility location");
  if (objective == Objective::kMaxisum) {
    double total = 0.0;
    for (const auto& a : profile.agents()) total += multi_benefit(a, y, interval);
    return total;
  }
  double least = std::numeric_limits<double>::infinity();
  for (const auto& a : profile.agents()) {
    least = std::min(least, multi_benefit(a, y, interval));
  }
  return least;
}

// For the egalitarian objective this is E[min], not min of expectations.
inline double expected_social_benefit(const Profile& profile,
                                      const Lottery& lottery,
                                      Objective objective) {
  lottery.require_within(profile.interval());
  return lottery.expectation(
      [&](double y) { return social_benefit(profile, y, objective); });
}

}  // namespace facmech

#endif  // FACMECH_MODEL_HPP_
