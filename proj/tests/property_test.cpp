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

// Seeded randomized properties. Each case is reproducible from its index.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "facmech/instances.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/oracle.hpp"
#include "facmech/verification.hpp"

namespace facmech {
namespace {

const Interval kI = Interval::unit_pair();
constexpr std::uint64_t kSeed = 20261016;
constexpr std::size_t kCases = 2000;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::size_t i) : rng(instance_seed(kSeed, i)) {}

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  // Mix of continuous and grid locations so ties and midpoints show up.
  double location(const Interval& I) {
    if (std::bernoulli_distribution(0.3)(rng)) {
      return I.lo() + I.length() * static_cast<double>(size(0, 8)) / 8.0;
    }
    return real(I.lo(), I.hi());
  }
  Profile hybrid(const Interval& I = kI) {
    std::vector<AgentReport> agents;
    const std::size_t n = size(1, 9);
    for (std::size_t i = 0; i < n; ++i) {
      agents.emplace_back(size(0, 1) ? AgentType::kType2 : AgentType::kType1, location(I));
    }
    return Profile(I, std::move(agents));
  }
  Profile multi() {
    std::vector<AgentReport> agents;
    const std::size_t n = size(1, 6);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> xs(size(1, 4));
      for (double& x : xs) x = location(kI);
      agents.emplace_back(AgentType::kType1, std::move(xs));
    }
    return Profile(kI, std::move(agents));
  }
  Profile shuffled(const Profile& p) {
    std::vector<AgentReport> agents(p.agents().begin(), p.agents().end());
    std::shuffle(agents.begin(), agents.end(), rng);
    return Profile(p.interval(), std::move(agents));
  }
};

TEST(Property, HybridOutcomesLiveOnEndpointsAndMidpoint) {
  for (std::size_t i = 0; i < kCases; ++i) {
    Gen g(i);
    const Profile p = g.hybrid();
    const double d = det_hybrid(p).point_location();
    EXPECT_TRUE(d == 0.0 || d == 2.0);
    const Lottery r = rand_hybrid(p);
    EXPECT_EQ(r.support().size(), 3u);
    EXPECT_DOUBLE_EQ(r.probability_of(d), 12.0 / 23.0) << "case " << i;
  }
}

TEST(Property, MechanismsNeverBeatOptimum) {
  const std::vector<Mechanism> hybrid{det_hybrid_mechanism(), rand_hybrid_mechanism()};
  const std::vector<Mechanism> multi{det_multi_mechanism(), rand_multi_canonical_mechanism()};
  for (std::size_t i = 0; i < kCases; ++i) {
    Gen g(i);
    const Profile p = g.hybrid();
    for (Objective o : {Objective::kMaxisum, Objective::kEgalitarian}) {
      const double best = opt(p, o).value;
      for (const auto& m : hybrid) {
        EXPECT_LE(expected_social_benefit(p, m(p), o), best + 1e-12) << "case " << i;
      }
    }
    const Profile q = g.multi();
    const double best = opt(q, Objective::kMaxisum).value;
    for (const auto& m : multi) {
      EXPECT_LE(expected_social_benefit(q, m(q), Objective::kMaxisum), best + 1e-12);
    }
  }
}

TEST(Property, RatioBoundsOnGridHeavyProfiles) {
  for (std::size_t i = 0; i < kCases; ++i) {
    Gen g(i);
    const Profile p = g.hybrid();
    EXPECT_LE(evaluate_ratio(det_hybrid_mechanism(), Objective::kMaxisum, p).ratio, 3.0 + 1e-9);
    EXPECT_LE(evaluate_ratio(rand_hybrid_mechanism(), Objective::kMaxisum, p).ratio,
              23.0 / 13.0 + 1e-9);
    const Profile q = g.multi();
    EXPECT_LE(evaluate_ratio(det_multi_mechanism(), Objective::kMaxisum, q).ratio, 3.0 + 1e-9);
    EXPECT_LE(evaluate_ratio(rand_multi_canonical_mechanism(), Objective::kMaxisum, q).ratio,
              1.5 + 1e-9);
  }
}

TEST(Property, AnonymousInAgentOrder) {
  for (std::size_t i = 0; i < kCases; ++i) {
    Gen g(i);
    const Profile p = g.hybrid();
    const Profile ps = g.shuffled(p);
    EXPECT_EQ(det_hybrid(p), det_hybrid(ps));
    EXPECT_EQ(rand_hybrid(p), rand_hybrid(ps));
    const Profile q = g.multi();
    const Profile qs = g.shuffled(q);
    EXPECT_EQ(det_multi(q), det_multi(qs));
    EXPECT_EQ(rand_multi(q, canonical_p), rand_multi(qs, canonical_p));
    EXPECT_DOUBLE_EQ(opt(q, Objective::kMaxisum).value, opt(qs, Objective::kMaxisum).value);
  }
}

TEST(Property, EquivariantUnderExactAffineMaps) {
  // Scale by a power of two and shift by an integer so no rounding occurs.
  for (std::size_t i = 0; i < kCases; ++i) {
    Gen g(i);
    const Profile p = g.hybrid();
    const double scale = std::ldexp(1.0, static_cast<int>(g.size(0, 4)) - 2);
    const double shift = static_cast<double>(g.size(0, 6)) - 3.0;
    const Interval J(shift, shift + 2.0 * scale);
    std::vector<AgentReport> moved;
    for (const auto& a : p.agents()) moved.emplace_back(a.type(), shift + scale * a.location());
    const Profile q(J, std::move(moved));
    EXPECT_EQ(det_hybrid(q).point_location(), shift + scale * det_hybrid(p).point_location());
    const Lottery lp = rand_hybrid(p);
    const Lottery lq = rand_hybrid(q);
    for (const auto& o : lp.support()) {
      EXPECT_DOUBLE_EQ(lq.probability_of(shift + scale * o.location), o.probability);
    }
    EXPECT_NEAR(opt(q, Objective::kMaxisum).value, scale * opt(p, Objective::kMaxisum).value,
                1e-9 * scale);
  }
}

TEST(Property, ExactOracleDominatesGrid) {
  for (std::size_t i = 0; i < 300; ++i) {
    Gen g(i);
    const Profile p = g.hybrid();
    for (Objective o : {Objective::kMaxisum, Objective::kEgalitarian}) {
      const double exact = opt(p, o).value;
      const double grid = grid_oracle(p, o, 1e-3).value;
      EXPECT_GE(exact, grid - 1e-12);
      EXPECT_LE(exact - grid, 2e-3);
    }
    const Profile q = g.multi();
    EXPECT_GE(opt(q, Objective::kMaxisum).value,
              grid_oracle(q, Objective::kMaxisum, 1e-3).value - 1e-12);
  }
}

TEST(Property, MidpointFamilyIsStrategyproof) {
  for (std::size_t i = 0; i < 500; ++i) {
    Gen g(i);
    const double a = static_cast<double>(g.size(0, 3)) / 2.0;
    const double b = a + static_cast<double>(g.size(1, 4 - static_cast<std::size_t>(2 * a))) / 2.0;
    const double wm = g.real(0.0, 2.0);
    const double wl = wm + g.real(0.0, 2.0);
    const Mechanism m = midpoint_score_mechanism({a, b, wl, wm, g.real(0.0, 6.0)});
    std::vector<AgentReport> agents;
    const std::size_t n = g.size(1, 6);
    for (std::size_t k = 0; k < n; ++k) agents.emplace_back(AgentType::kType1, g.location(kI));
    const Profile p(kI, std::move(agents));
    EXPECT_TRUE(sp_check(m, p).empty()) << m.name() << " case " << i;
  }
}

TEST(Property, RandMultiProbabilityWithinBounds) {
  for (std::int64_t r = 0; r <= 60; ++r) {
    for (std::int64_t l = 0; l <= 60; ++l) {
      if (r + l == 0) continue;
      EXPECT_NO_THROW(check_p_bounds(canonical_p(r, l), r, l)) << r << "," << l;
      EXPECT_GE(canonical_p(r, l), 0.0);
      EXPECT_LE(canonical_p(r, l), 2.0 / 3.0);
    }
  }
}

TEST(Property, JsonRoundTripOfRandomProfiles) {
  for (std::size_t i = 0; i < 500; ++i) {
    Gen g(i);
    const Profile p = g.multi();
    EXPECT_EQ(parse_instance(profile_to_json(p).dump()), p);
  }
}

TEST(Property, LotteryNormalizationPreservesMass) {
  for (std::size_t i = 0; i < kCases; ++i) {
    Gen g(i);
    std::vector<Outcome> raw;
    const std::size_t k = g.size(1, 6);
    for (std::size_t j = 0; j < k; ++j) raw.push_back({g.location(kI), 1.0 / static_cast<double>(k)});
    const Lottery l(raw);
    double total = 0.0;
    for (std::size_t j = 0; j < l.support().size(); ++j) {
      total += l.support()[j].probability;
      if (j > 0) {
        EXPECT_LT(l.support()[j - 1].location, l.support()[j].location);
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace facmech
