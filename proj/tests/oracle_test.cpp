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

// Hand-computed optima, checked before anything is built on the oracle.

#include <gtest/gtest.h>

#include "facmech/instances.hpp"
#include "facmech/oracle.hpp"

namespace facmech {
namespace {

const Interval kI = Interval::unit_pair();

TEST(OptMaxisum, Tightness) {
  const OptResult r = opt_maxisum(gen_tightness_32());
  EXPECT_EQ(r.value, 3.0);
  EXPECT_EQ(r.location, 0.0);
}

TEST(OptMaxisum, InteriorOptimumForType2) {
  const Profile p = Profile::single(kI, AgentType::kType2, {0.4, 0.6, 1.8});
  const OptResult r = opt_maxisum(p);
  EXPECT_EQ(r.location, 0.6);
  EXPECT_NEAR(r.value, 6.0 - (0.2 + 0.0 + 1.2), 1e-12);
}

TEST(OptEgalitarian, TwoFarAgents) {
  const OptResult r = opt_egalitarian(gen_thm52(0.0, 2.0));
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.location, 1.0);
}

TEST(OptEgalitarian, CrossingOfType2Pieces) {
  const OptResult r = opt_egalitarian(Profile::single(kI, AgentType::kType2, {0.0, 2.0}));
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.location, 1.0);
}

TEST(OptEgalitarian, CrossingOfMixedPieces) {
  // Type-1 at 0.2 (benefit y - 0.2 right of it) meets type-2 at 0.4
  // (benefit 2 - (y - 0.4)) at y = 1.3.
  const Profile p(kI, {AgentReport(AgentType::kType1, 0.2), AgentReport(AgentType::kType2, 0.4)});
  const OptResult r = opt_egalitarian(p);
  EXPECT_NEAR(r.location, 1.3, 1e-12);
  EXPECT_NEAR(r.value, 1.1, 1e-12);
}

TEST(OptEgalitarian, TiesGoToSmallestLocation) {
  const OptResult r = opt_egalitarian(Profile::single(kI, AgentType::kType1, {0.5, 1.5}));
  EXPECT_EQ(r.value, 0.5);
  EXPECT_EQ(r.location, 0.0);
}

TEST(OptEgalitarian, MultiLocationUnsupported) {
  const Profile p(kI, {AgentReport(AgentType::kType1, {0.0, 2.0})});
  EXPECT_THROW(opt_egalitarian(p), UnsupportedError);
}

TEST(OptEgalitarian, StretchedInstance) {
  const Thm62Instance inst = gen_thm62(10.0, 0.1);
  const OptResult r = opt_egalitarian(inst.x);
  EXPECT_NEAR(r.value, 0.5, 1e-9);
  // 0.5 and M + 1.5 tie; the smaller one is reported.
  EXPECT_NEAR(r.location, 0.5, 1e-9);
}

TEST(OptMultiMaxisum, WorkedInstance) {
  const Profile p(kI, {AgentReport(AgentType::kType1, {0.0, 2.0}),
                       AgentReport(AgentType::kType1, 1.5)});
  const OptResult r = opt_multi_maxisum(p);
  EXPECT_EQ(r.location, 0.0);
  EXPECT_EQ(r.value, 3.5);
  EXPECT_EQ(opt(p, Objective::kMaxisum).value, 3.5);
}

TEST(GridOracle, HitsBothEndpoints) {
  const Profile p = Profile::single(kI, AgentType::kType1, {0.1});
  const OptResult r = grid_oracle(p, Objective::kMaxisum, 0.3);
  EXPECT_EQ(r.location, 2.0);
  EXPECT_DOUBLE_EQ(r.value, 1.9);
  EXPECT_EQ(r.candidate_count, 8u);
  EXPECT_THROW(grid_oracle(p, Objective::kMaxisum, 0.0), DomainError);
}

TEST(OptMechanism, PlacesAtOptimum) {
  EXPECT_EQ(opt_mechanism(Objective::kMaxisum)(gen_tightness_32()).point_location(), 0.0);
  EXPECT_EQ(opt_mechanism(Objective::kEgalitarian)(gen_thm52(0.0, 2.0)).point_location(), 1.0);
}

}  // namespace
}  // namespace facmech
