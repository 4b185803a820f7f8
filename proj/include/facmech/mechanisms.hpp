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

// Strategyproof facility-location mechanisms.
//
//   det_hybrid    both agent types, facility at an endpoint chosen by a
//                 majority of "who prefers which endpoint".
//   rand_hybrid   the same majority, but a fixed 12/23, 8/23, 3/23 lottery
//                 over {winning endpoint, losing endpoint, midpoint}.
//   det_multi     type-1 agents controlling several locations; the majority
//                 is weighted by location counts.
//   rand_multi    two-endpoint lottery whose left probability comes from a
//                 caller-supplied rule; canonical_p is one valid rule.
//   midpoint_score_mechanism
//                 a two-point-range family for type-1 agents built from a
//                 monotone score over who sits left of / on the midpoint.
//
// All mechanism decisions use exact floating comparisons.

#ifndef FACMECH_MECHANISMS_HPP_
#define FACMECH_MECHANISMS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "facmech/errors.hpp"
#include "facmech/model.hpp"

namespace facmech {

enum class DomainConstraint { kHybridTypes, kType1Only };

class Mechanism {
 public:
  using Rule = std::function<Lottery(const Profile&)>;

  Mechanism(std::string name, DomainConstraint domain,
            bool multi_location_capable, bool deterministic, Rule rule)
      : name_(std::move(name)),
        domain_(domain),
        multi_location_capable_(multi_location_capable),
        deterministic_(deterministic),
        rule_(std::move(rule)) {}

  const std::string& name() const { return name_; }
  DomainConstraint domain() const { return domain_; }
  bool multi_location_capable() const { return multi_location_capable_; }
  bool deterministic() const { return deterministic_; }

  bool accepts_report(const AgentReport& r) const {
    if (domain_ == DomainConstraint::kType1Only && r.type() != AgentType::kType1) {
      return false;
    }
    return multi_location_capable_ || r.single();
  }

  bool accepts(const Profile& profile) const {
    for (const auto& a : profile.agents()) {
      if (!accepts_report(a)) return false;
    }
    return true;
  }

  void require_accepts(const Profile& profile) const {
    for (const auto& a : profile.agents()) {
      if (domain_ == DomainConstraint::kType1Only &&
          a.type() != AgentType::kType1) {
        throw DomainError(name_ + " accepts type-1 agents only");
      }
      if (!multi_location_capable_ && !a.single()) {
        throw DomainError(name_ + " accepts single-location agents only");
      }
    }
  }

  Lottery operator()(const Profile& profile) const {
    require_accepts(profile);
    Lottery out = rule_(profile);
    out.require_within(profile.interval());
    if (deterministic_ && !out.is_point_mass()) {
      throw std::logic_error(name_ + " is declared deterministic but returned a lottery");
    }
    return out;
  }

 private:
  std::string name_;
  DomainConstraint domain_;
  bool multi_location_capable_;
  bool deterministic_;
  Rule rule_;
};

// ---------------------------------------------------------------------------
// Hybrid model (single location per agent)
// ---------------------------------------------------------------------------

// right: agents that weakly prefer the high endpoint over the low one.
struct RLPartition {
  std::vector<std::size_t> right;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right_type1;
  std::vector<std::size_t> right_type2;
  std::vector<std::size_t> left_type1;
  std::vector<std::size_t> left_type2;
};

inline void require_single_location(const Profile& profile, const char* who) {
  if (!profile.all_single_location()) {
    throw DomainError(std::string(who) + " requires single-location agents");
  }
}

// Type-1 agents at or left of the interval midpoint and type-2 agents at or
// right of it go to `right`; everyone else to `left`.
inline RLPartition partition_rl(const Profile& profile) {
  require_single_location(profile, "partition_rl");
  const double mid = profile.interval().midpoint();
  RLPartition part;
  for (std::size_t i = 0; i < profile.n(); ++i) {
    const AgentReport& a = profile.agent(i);
    const double x = a.location();
    if (a.type() == AgentType::kType1) {
      if (x <= mid) {
        part.right.push_back(i);
        part.right_type1.push_back(i);
      } else {
        part.left.push_back(i);
        part.left_type1.push_back(i);
      }
    } else {
      if (x >= mid) {
        part.right.push_back(i);
        part.right_type2.push_back(i);
      } else {
        part.left.push_back(i);
        part.left_type2.push_back(i);
      }
    }
  }
  return part;
}

inline Lottery det_hybrid(const Profile& profile) {
  const RLPartition part = partition_rl(profile);
  const Interval& I = profile.interval();
  return Lottery::point(part.right.size() >= part.left.size() ? I.hi() : I.lo());
}

inline constexpr double kRandHybridMajority = 12.0 / 23.0;
inline constexpr double kRandHybridMinority = 8.0 / 23.0;
inline constexpr double kRandHybridMiddle = 3.0 / 23.0;

inline Lottery rand_hybrid(const Profile& profile) {
  const RLPartition part = partition_rl(profile);
  const Interval& I = profile.interval();
  const bool right_wins = part.right.size() >= part.left.size();
  const double p_hi = right_wins ? kRandHybridMajority : kRandHybridMinority;
  const double p_lo = right_wins ? kRandHybridMinority : kRandHybridMajority;
  return Lottery({{I.hi(), p_hi}, {I.lo(), p_lo}, {I.midpoint(), kRandHybridMiddle}});
}

inline Mechanism det_hybrid_mechanism() {
  return Mechanism("det-hybrid", DomainConstraint::kHybridTypes, false, true,
                   det_hybrid);
}

inline Mechanism rand_hybrid_mechanism() {
  return Mechanism("rand-hybrid", DomainConstraint::kHybridTypes, false, false,
                   rand_hybrid);
}

// ---------------------------------------------------------------------------
// Score-threshold midpoint family (type-1 agents)
// ---------------------------------------------------------------------------

struct MidpointFamilyParams {
  double alpha = 0.0;
  double beta = 2.0;
  double weight_left = 1.0;  // per agent strictly left of the midpoint
  double weight_mid = 1.0;   // per agent exactly on the midpoint
  double threshold = 1.0;

  double midpoint() const { return (alpha + beta) / 2.0; }

  void validate() const {
    for (double v : {alpha, beta, weight_left, weight_mid, threshold}) {
      if (!std::isfinite(v)) throw ValidityError("midpoint params must be finite");
    }
    if (alpha > beta) throw ValidityError("midpoint params need alpha <= beta");
    if (weight_mid < 0.0) throw ValidityError("midpoint params need wM >= 0");
    if (weight_left < weight_mid) {
      throw ValidityError("midpoint params need wL >= wM");
    }
  }

  std::string name() const {
    return "midpoint(" + detail::fmt_real(alpha) + "," + detail::fmt_real(beta) +
           "," + detail::fmt_real(weight_left) + "," +
           detail::fmt_real(weight_mid) + "," + detail::fmt_real(threshold) + ")";
  }
};

// f(x) = beta iff wL*|{x_i < m}| + wM*|{x_i = m}| >= tau, else alpha.
// Moving an agent rightwards can only lower the score, so no agent can pull
// the facility toward the endpoint it prefers.
inline Mechanism midpoint_score_mechanism(const MidpointFamilyParams& params) {
  params.validate();
  auto rule = [params](const Profile& profile) {
    const Interval& I = profile.interval();
    I.require_contains(params.alpha, "midpoint alpha");
    I.require_contains(params.beta, "midpoint beta");
    const double m = params.midpoint();
    double score = 0.0;
    for (const auto& a : profile.agents()) {
      const double x = a.location();
      if (x < m) {
        score += params.weight_left;
      } else if (x == m) {
        score += params.weight_mid;
      }
    }
    return Lottery::point(score >= params.threshold ? params.beta : params.alpha);
  };
  return Mechanism(params.name(), DomainConstraint::kType1Only, false, true,
                   std::move(rule));
}

// Always the low (or high) endpoint of whatever interval the profile uses.
inline Mechanism constant_endpoint_mechanism(bool high) {
  return Mechanism(high ? "constant-hi" : "constant-lo",
                   DomainConstraint::kHybridTypes, true, true,
                   [high](const Profile& p) {
                     return Lottery::point(high ? p.interval().hi()
                                                : p.interval().lo());
                   });
}

// `base` everywhere except on `target`, where the point-mass outcome y is
// mirrored to lo + hi - y.
inline Mechanism flip_on_profile(const Mechanism& base, Profile target) {
  if (!base.deterministic()) {
    throw UnsupportedError("flip_on_profile needs a deterministic base mechanism");
  }
  auto rule = [base, target = std::move(target)](const Profile& p) {
    Lottery out = base(p);
    if (!(p == target)) return out;
    const Interval& I = p.interval();
    return Lottery::point(I.lo() + I.hi() - out.point_location());
  };
  return Mechanism(base.name() + "-mutant", base.domain(),
                   base.multi_location_capable(), true, std::move(rule));
}

// The profile on which the built-in det-hybrid mutant disagrees with
// det-hybrid: two type-1 agents at 0.5 and 1.5 on [0, 2].
inline Profile builtin_mutant_profile() {
  return Profile::single(Interval::unit_pair(), AgentType::kType1, {0.5, 1.5});
}

inline Mechanism det_hybrid_mutant() {
  return flip_on_profile(det_hybrid_mechanism(), builtin_mutant_profile());
}

// ---------------------------------------------------------------------------
// Multi-location model (type-1 agents)
// ---------------------------------------------------------------------------

// Location counts of agents whose mean location is at or left of the
// interval midpoint (right) versus strictly right of it (left).
struct SideSums {
  std::int64_t right = 0;
  std::int64_t left = 0;
};

inline void require_type1(const Profile& profile, const char* who) {
  if (!profile.all_type1()) {
    throw DomainError(std::string(who) + " accepts type-1 agents only");
  }
}

inline SideSums multi_side_sums(const Profile& profile) {
  const double mid = profile.interval().midpoint();
  SideSums sums;
  for (const auto& a : profile.agents()) {
    const auto k = static_cast<std::int64_t>(a.k());
    if (a.mean_location() <= mid) {
      sums.right += k;
    } else {
      sums.left += k;
    }
  }
  return sums;
}

inline Lottery det_multi(const Profile& profile) {
  require_type1(profile, "det_multi");
  const SideSums s = multi_side_sums(profile);
  const Interval& I = profile.interval();
  return Lottery::point(s.right >= s.left ? I.hi() : I.lo());
}

inline Mechanism det_multi_mechanism() {
  return Mechanism("det-multi", DomainConstraint::kType1Only, true, true,
                   det_multi);
}

// Probability of the low endpoint as a function of (sum_right, sum_left).
using PRule = std::function<double(std::int64_t sum_right, std::int64_t sum_left)>;

inline double canonical_p(std::int64_t sum_right, std::int64_t sum_left) {
  if (sum_right < 0 || sum_left < 0) {
    throw DomainError("canonical_p needs nonnegative location counts");
  }
  if (sum_right + sum_left < 1) {
    throw DomainError("canonical_p needs at least one location");
  }
  if (sum_left == 0) return 0.0;
  const double v = 2.0 / 3.0 - static_cast<double>(sum_right) /
                                   (6.0 * static_cast<double>(sum_left));
  return std::max(v, 0.0);
}

struct PBounds {
  double lower;  // -inf when sum_left == 0
  double upper;  // +inf when sum_right == 0
};

inline PBounds rand_multi_bounds(std::int64_t sum_right, std::int64_t sum_left) {
  const double inf = std::numeric_limits<double>::infinity();
  const auto r = static_cast<double>(sum_right);
  const auto l = static_cast<double>(sum_left);
  return PBounds{sum_left == 0 ? -inf : 2.0 / 3.0 - r / (6.0 * l),
                 sum_right == 0 ? inf : 1.0 / 3.0 + l / (6.0 * r)};
}

// Slack on the per-profile bound check only; the lottery itself uses p as
// returned by the rule.
inline constexpr double kPBoundSlack = 1e-12;

inline void check_p_bounds(double p, std::int64_t sum_right,
                           std::int64_t sum_left) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw ValidityError("p_rule returned " + detail::fmt_real(p) +
                        ", outside [0, 1]");
  }
  const PBounds b = rand_multi_bounds(sum_right, sum_left);
  if (p < b.lower - kPBoundSlack) {
    throw ValidityError("p = " + detail::fmt_real(p) +
                        " violates the lower bound 2/3 - sumR/(6 sumL) = " +
                        detail::fmt_real(b.lower));
  }
  if (p > b.upper + kPBoundSlack) {
    throw ValidityError("p = " + detail::fmt_real(p) +
                        " violates the upper bound 1/3 + sumL/(6 sumR) = " +
                        detail::fmt_real(b.upper));
  }
}

inline Lottery rand_multi(const Profile& profile, const PRule& p_rule) {
  require_type1(profile, "rand_multi");
  const SideSums s = multi_side_sums(profile);
  const double p = p_rule(s.right, s.left);
  check_p_bounds(p, s.right, s.left);
  const Interval& I = profile.interval();
  return Lottery({{I.lo(), p}, {I.hi(), 1.0 - p}});
}

inline Mechanism rand_multi_mechanism(std::string name, PRule p_rule) {
  return Mechanism(std::move(name), DomainConstraint::kType1Only, true, false,
                   [p_rule = std::move(p_rule)](const Profile& p) {
                     return rand_multi(p, p_rule);
                   });
}

inline Mechanism rand_multi_canonical_mechanism() {
  return rand_multi_mechanism("rand-multi-canonical", canonical_p);
}

}  // namespace facmech

#endif  // FACMECH_MECHANISMS_HPP_
