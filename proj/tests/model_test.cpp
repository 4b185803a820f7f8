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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "facmech/model.hpp"

namespace facmech {
namespace {

const Interval kI = Interval::unit_pair();

TEST(Interval, RejectsEmptyOrNonFinite) {
  EXPECT_THROW(Interval(1.0, 1.0), DomainError);
  EXPECT_THROW(Interval(2.0, 0.0), DomainError);
  EXPECT_THROW(Interval(0.0, std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_THROW(Interval(std::nan(""), 1.0), DomainError);
  EXPECT_DOUBLE_EQ(kI.midpoint(), 1.0);
  EXPECT_DOUBLE_EQ(kI.length(), 2.0);
}

TEST(Benefit, TypesAreMirrorImages) {
  EXPECT_DOUBLE_EQ(benefit(AgentReport(AgentType::kType1, 0.5), 2.0, kI), 1.5);
  EXPECT_DOUBLE_EQ(benefit(AgentReport(AgentType::kType2, 0.5), 2.0, kI), 0.5);
  EXPECT_DOUBLE_EQ(benefit(AgentReport(AgentType::kType2, 0.5), 0.5, kI), 2.0);
  EXPECT_DOUBLE_EQ(benefit(AgentReport(AgentType::kType1, 0.5), 0.5, kI), 0.0);
}

TEST(Benefit, MultiLocationSumsOverLocations) {
  const AgentReport a(AgentType::kType1, {0.0, 2.0});
  EXPECT_DOUBLE_EQ(multi_benefit(a, 2.0, kI), 2.0);
  EXPECT_DOUBLE_EQ(multi_benefit(a, 0.5, kI), 2.0);
  EXPECT_THROW(benefit(a, 1.0, kI), DomainError);
}

TEST(Benefit, RejectsFacilityOffInterval) {
  EXPECT_THROW(benefit(AgentReport(AgentType::kType1, 0.5), 2.5, kI), DomainError);
}

TEST(Profile, ValidatesLocations) {
  EXPECT_THROW(Profile(kI, {}), DomainError);
  EXPECT_THROW(Profile::single(kI, AgentType::kType1, {0.5, 2.1}), DomainError);
  EXPECT_THROW(AgentReport(AgentType::kType1, std::vector<double>{}), DomainError);
  const Profile p = Profile::single(kI, AgentType::kType1, {0.5, 1.5});
  const Profile q = p.with_agent(1, AgentReport(AgentType::kType2, 0.25));
  EXPECT_EQ(q.agent(1).type(), AgentType::kType2);
  EXPECT_EQ(p.agent(1).location(), 1.5);
  EXPECT_THROW(p.with_agent(0, AgentReport(AgentType::kType1, 3.0)), DomainError);
  EXPECT_FALSE(q.all_type1());
  EXPECT_TRUE(p.all_single_location());
}

TEST(Lottery, NormalizesSupport) {
  const Lottery l({{2.0, 0.25}, {0.0, 0.5}, {2.0, 0.25}, {1.0, 0.0}});
  ASSERT_EQ(l.support().size(), 2u);
  EXPECT_EQ(l.support()[0].location, 0.0);
  EXPECT_EQ(l.support()[1].location, 2.0);
  EXPECT_DOUBLE_EQ(l.probability_of(2.0), 0.5);
  EXPECT_DOUBLE_EQ(l.probability_of(1.0), 0.0);
  EXPECT_DOUBLE_EQ(l.expected_location(), 1.0);
  EXPECT_DOUBLE_EQ(l.probability_in(0.0, 1.0), 0.5);
  EXPECT_FALSE(l.is_point_mass());
  EXPECT_THROW(l.point_location(), UnsupportedError);
}

TEST(Lottery, SumTolerance) {
  EXPECT_NO_THROW(Lottery({{0.0, 0.5}, {1.0, 0.5 + 1e-13}}));
  EXPECT_THROW(Lottery({{0.0, 0.5}, {1.0, 0.5 + 1e-11}}), DomainError);
  EXPECT_THROW(Lottery({{0.0, 1.5}, {1.0, -0.5}}), DomainError);
  EXPECT_THROW(Lottery({}), DomainError);
}

TEST(SocialBenefit, EgalitarianIsExpectationOfMinimum) {
  const Profile p = Profile::single(kI, AgentType::kType1, {0.0, 2.0});
  const Lottery coin({{0.0, 0.5}, {2.0, 0.5}});
  // Each agent expects 1, yet the minimum is 0 on every outcome.
  EXPECT_DOUBLE_EQ(expected_benefit(p.agent(0), coin, kI), 1.0);
  EXPECT_DOUBLE_EQ(expected_social_benefit(p, coin, Objective::kEgalitarian), 0.0);
  EXPECT_DOUBLE_EQ(expected_social_benefit(p, coin, Objective::kMaxisum), 2.0);
}

TEST(SocialBenefit, RejectsLotteryOffInterval) {
  const Profile p = Profile::single(kI, AgentType::kType1, {0.0});
  EXPECT_THROW(expected_social_benefit(p, Lottery::point(-0.1), Objective::kMaxisum),
               DomainError);
}

TEST(Objective, ParsesNames) {
  EXPECT_EQ(parse_objective("maxisum"), Objective::kMaxisum);
  EXPECT_EQ(parse_objective("egalitarian"), Objective::kEgalitarian);
  EXPECT_FALSE(parse_objective("utilitarian").has_value());
  EXPECT_THROW(agent_type_from_label(3), DomainError);
}

}  // namespace
}  // namespace facmech
