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

// Exact optimal facility locations.
//
// Every agent's benefit is piecewise linear in the facility location y with
// slopes +-1 and a single kink at each of its locations. Hence:
//   * maxisum is piecewise linear with kinks only at agent locations, so the
//     optimum is among {lo, hi} and the agent locations;
//   * egalitarian (min over agents) can also bend where a falling piece of
//     one agent meets a rising piece of another, at y = (c_down - c_up) / 2.
// Candidate enumeration is exact; grid_oracle is the brute-force cross-check.
//
// Ties between maximizers go to the smallest location.

#ifndef FACMECH_ORACLE_HPP_
#define FACMECH_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "facmech/errors.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/model.hpp"

namespace facmech {

struct OptResult {
  double location = 0.0;
  double value = 0.0;
  std::size_t candidate_count = 0;
};

namespace detail {

inline constexpr double kCandidateMergeDistance = 1e-12;

inline OptResult best_candidate(const Profile& profile, Objective objective,
                                std::vector<double> candidates) {
  const Interval& I = profile.interval();
  std::erase_if(candidates, [&](double y) { return !I.contains(y); });
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> unique;
  unique.reserve(candidates.size());
  for (double y : candidates) {
    if (unique.empty() || y - unique.back() > kCandidateMergeDistance) {
      unique.push_back(y);
    }
  }
  OptResult best{unique.front(), -std::numeric_limits<double>::infinity(),
                 unique.size()};
  for (double y : unique) {
    const double v = social_benefit(profile, y, objective);
    if (v > best.value) {
      best.location = y;
      best.value = v;
    }
  }
  return best;
}

inline std::vector<double> kink_candidates(const Profile& profile) {
  const Interval& I = profile.interval();
  std::vector<double> c{I.lo(), I.hi()};
  for (const auto& a : profile.agents()) {
    c.insert(c.end(), a.locations().begin(), a.locations().end());
  }
  return c;
}

}  // namespace detail

inline OptResult opt_maxisum(const Profile& profile) {
  return detail::best_candidate(profile, Objective::kMaxisum,
                                detail::kink_candidates(profile));
}

inline OptResult opt_egalitarian(const Profile& profile) {
  if (!profile.all_single_location()) {
    throw UnsupportedError("opt_egalitarian supports single-location agents only");
  }
  const double len = profile.interval().length();
  // Each agent contributes one falling piece c - y and one rising piece c + y.
  std::vector<double> down;
  std::vector<double> up;
  down.reserve(profile.n());
  up.reserve(profile.n());
  for (const auto& a : profile.agents()) {
    const double x = a.location();
    if (a.type() == AgentType::kType1) {
      down.push_back(x);   // x - y for y <= x
      up.push_back(-x);    // y - x for y >= x
    } else {
      down.push_back(len + x);  // len - (y - x) for y >= x
      up.push_back(len - x);    // len - (x - y) for y <= x
    }
  }
  std::vector<double> candidates = detail::kink_candidates(profile);
  candidates.reserve(candidates.size() + down.size() * up.size());
  for (double d : down) {
    for (double u : up) candidates.push_back((d - u) / 2.0);
  }
  return detail::best_candidate(profile, Objective::kEgalitarian,
                                std::move(candidates));
}

// With only type-1 agents every benefit is convex in y, so the maximizer is
// an endpoint; that is asserted here.
inline OptResult opt_multi_maxisum(const Profile& profile) {
  OptResult best = opt_maxisum(profile);
  if (!profile.all_type1()) return best;
  const Interval& I = profile.interval();
  if (best.location == I.lo() || best.location == I.hi()) return best;
  const double at_lo = social_benefit(profile, I.lo(), Objective::kMaxisum);
  const double at_hi = social_benefit(profile, I.hi(), Objective::kMaxisum);
  const double endpoint_best = std::max(at_lo, at_hi);
  if (best.value - endpoint_best > 1e-9 * (1.0 + std::abs(best.value))) {
    throw std::logic_error("type-1 maxisum optimum found strictly inside the interval");
  }
  // Rounding put an interior candidate a few ulps ahead; report the endpoint.
  best.location = at_lo >= at_hi ? I.lo() : I.hi();
  best.value = endpoint_best;
  return best;
}

inline OptResult grid_oracle(const Profile& profile, Objective objective,
                             double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw DomainError("grid resolution must be positive");
  }
  const Interval& I = profile.interval();
  const auto steps =
      static_cast<std::size_t>(std::ceil(I.length() / resolution));
  OptResult best{I.lo(), -std::numeric_limits<double>::infinity(), steps + 1};
  for (std::size_t j = 0; j <= steps; ++j) {
    const double y = j == steps ? I.hi()
                                : I.lo() + I.length() * static_cast<double>(j) /
                                               static_cast<double>(steps);
    const double v = social_benefit(profile, y, objective);
    if (v > best.value) {
      best.location = y;
      best.value = v;
    }
  }
  return best;
}

inline OptResult opt(const Profile& profile, Objective objective) {
  if (objective == Objective::kEgalitarian) return opt_egalitarian(profile);
  return profile.all_single_location() ? opt_maxisum(profile)
                                       : opt_multi_maxisum(profile);
}

// The (non-strategyproof) mechanism that always places the facility at OPT.
inline Mechanism opt_mechanism(Objective objective) {
  const bool multi = objective == Objective::kMaxisum;
  return Mechanism(objective == Objective::kMaxisum ? "opt-maxisum"
                                                    : "opt-egalitarian",
                   DomainConstraint::kHybridTypes, multi, true,
                   [objective](const Profile& p) {
                     return Lottery::point(opt(p, objective).location);
                   });
}

}  // namespace facmech

#endif  // FACMECH_ORACLE_HPP_
