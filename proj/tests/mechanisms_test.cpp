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

#include <stdexcept>

#include <gtest/gtest.h>

#include "facmech/instances.hpp"
#include "facmech/mechanisms.hpp"
#include "facmech/registry.hpp"

namespace facmech {
namespace {

const Interval kI = Interval::unit_pair();

Profile worked() {
  return Profile(kI, {AgentReport(AgentType::kType1, {0.0, 2.0}),
                      AgentReport(AgentType::kType1, 1.5)});
}

TEST(Partition, MidpointAgentsCountRight) {
  const Profile p(kI, {AgentReport(AgentType::kType1, 1.0),
                       AgentReport(AgentType::kType2, 1.0),
                       AgentReport(AgentType::kType1, 1.5),
                       AgentReport(AgentType::kType2, 0.5)});
  const RLPartition rl = partition_rl(p);
  EXPECT_EQ(rl.right, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rl.left, (std::vector<std::size_t>{2, 3}));
}

TEST(DetHybrid, FrozenOutcomes) {
  EXPECT_EQ(det_hybrid(gen_tightness_32()).point_location(), 2.0);
  EXPECT_EQ(det_hybrid(Profile::single(kI, AgentType::kType2, {0.2, 0.4})).point_location(),
            0.0);
  EXPECT_EQ(det_hybrid(Profile::single(kI, AgentType::kType1, {0.2, 1.4, 1.6}))
                .point_location(),
            0.0);
  EXPECT_EQ(det_hybrid(Profile::single(kI, AgentType::kType1, {0.5, 1.5})).point_location(),
            2.0);
}

TEST(RandHybrid, FrozenLotteryOnTightness) {
  const Lottery l = rand_hybrid(gen_tightness_32());
  ASSERT_EQ(l.support().size(), 3u);
  EXPECT_DOUBLE_EQ(l.probability_of(0.0), 8.0 / 23.0);
  EXPECT_DOUBLE_EQ(l.probability_of(1.0), 3.0 / 23.0);
  EXPECT_DOUBLE_EQ(l.probability_of(2.0), 12.0 / 23.0);
  EXPECT_NEAR(expected_social_benefit(gen_tightness_32(), l, Objective::kMaxisum),
              39.0 / 23.0, 1e-12);
}

TEST(RandHybrid, LosingSideGetsMinority) {
  const Lottery l = rand_hybrid(Profile::single(kI, AgentType::kType1, {1.5, 1.7}));
  EXPECT_DOUBLE_EQ(l.probability_of(0.0), 12.0 / 23.0);
  EXPECT_DOUBLE_EQ(l.probability_of(2.0), 8.0 / 23.0);
}

TEST(Hybrid, RejectsMultiLocation) {
  EXPECT_THROW(det_hybrid_mechanism()(worked()), DomainError);
  EXPECT_THROW(rand_hybrid_mechanism()(worked()), DomainError);
}

TEST(MidpointFamily, Validates) {
  EXPECT_THROW(midpoint_score_mechanism({0.0, 2.0, 0.5, 1.0, 1.0}), ValidityError);
  EXPECT_THROW(midpoint_score_mechanism({2.0, 0.0, 1.0, 1.0, 1.0}), ValidityError);
  EXPECT_THROW(midpoint_score_mechanism({0.0, 2.0, 1.0, -1.0, 1.0}), ValidityError);
  const Mechanism m = midpoint_score_mechanism({0.0, 2.0, 1.0, 0.0, 1.0});
  EXPECT_EQ(m(Profile::single(kI, AgentType::kType1, {1.0, 1.5})).point_location(), 0.0);
  EXPECT_EQ(m(Profile::single(kI, AgentType::kType1, {0.9, 1.5})).point_location(), 2.0);
  EXPECT_THROW(m(gen_tightness_32()), DomainError);
}

TEST(MidpointFamily, AlphaOffIntervalRejected) {
  const Mechanism m = midpoint_score_mechanism({0.0, 3.0, 1.0, 1.0, 1.0});
  EXPECT_THROW(m(Profile::single(kI, AgentType::kType1, {1.0})), DomainError);
}

TEST(Mutant, DiffersOnlyOnTarget) {
  const Mechanism base = det_hybrid_mechanism();
  const Mechanism mutant = det_hybrid_mutant();
  EXPECT_EQ(mutant.name(), "det-hybrid-mutant");
  EXPECT_EQ(mutant(builtin_mutant_profile()).point_location(), 0.0);
  EXPECT_EQ(base(builtin_mutant_profile()).point_location(), 2.0);
  const Profile other = Profile::single(kI, AgentType::kType1, {0.5, 1.0});
  EXPECT_EQ(mutant(other), base(other));
  EXPECT_THROW(flip_on_profile(rand_hybrid_mechanism(), other), UnsupportedError);
}

TEST(Mechanism, DeterministicContractEnforced) {
  const Mechanism liar("liar", DomainConstraint::kHybridTypes, false, true,
                       [](const Profile&) { return Lottery({{0.0, 0.5}, {2.0, 0.5}}); });
  EXPECT_THROW(liar(gen_tightness_32()), std::logic_error);
  const Mechanism outside("outside", DomainConstraint::kHybridTypes, false, false,
                          [](const Profile&) { return Lottery::point(5.0); });
  EXPECT_THROW(outside(gen_tightness_32()), DomainError);
}

TEST(DetMulti, WorkedInstance) {
  const SideSums s = multi_side_sums(worked());
  EXPECT_EQ(s.right, 2);
  EXPECT_EQ(s.left, 1);
  EXPECT_EQ(det_multi(worked()).point_location(), 2.0);
  EXPECT_THROW(det_multi(gen_tightness_32()), DomainError);
}

TEST(CanonicalP, FrozenValues) {
  EXPECT_DOUBLE_EQ(canonical_p(0, 5), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(canonical_p(5, 0), 0.0);
  EXPECT_DOUBLE_EQ(canonical_p(3, 3), 0.5);
  EXPECT_DOUBLE_EQ(canonical_p(8, 2), 0.0);
  const PBounds b = rand_multi_bounds(1, 2);
  EXPECT_DOUBLE_EQ(b.lower, 7.0 / 12.0);
  EXPECT_DOUBLE_EQ(b.upper, 2.0 / 3.0);
}

TEST(RandMulti, WorkedInstanceLottery) {
  const Lottery l = rand_multi(worked(), canonical_p);
  EXPECT_DOUBLE_EQ(l.probability_of(0.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(l.probability_of(2.0), 2.0 / 3.0);
  EXPECT_NEAR(expected_social_benefit(worked(), l, Objective::kMaxisum), 8.5 / 3.0, 1e-12);
}

TEST(RandMulti, RuleOutsideBoundsRejected) {
  EXPECT_THROW(check_p_bounds(0.9, 1, 2), ValidityError);
  EXPECT_NO_THROW(check_p_bounds(0.6, 1, 2));
  const Mechanism greedy =
      rand_multi_mechanism("always-lo", [](std::int64_t, std::int64_t) { return 1.0; });
  EXPECT_THROW(greedy(worked()), ValidityError);
}

TEST(Registry, KnownAndUnknownNames) {
  for (const char* n : {"det-hybrid", "rand-hybrid", "det-multi", "rand-multi-canonical",
                        "opt-maxisum", "opt-egalitarian", "constant-lo", "constant-hi",
                        "det-hybrid-mutant"}) {
    EXPECT_EQ(make_mechanism(n).name(), n);
  }
  const Mechanism m = make_mechanism("midpoint(0, 2, 1, 0.5, 1)");
  EXPECT_EQ(m.name(), "midpoint(0,2,1,0.5,1)");
  EXPECT_THROW(make_mechanism("dictator"), UnknownMechanismError);
  EXPECT_THROW(make_mechanism("midpoint(0,2,1)"), UnknownMechanismError);
  EXPECT_THROW(make_mechanism("midpoint(0,2,1,1,x)"), UnknownMechanismError);
  EXPECT_THROW(make_mechanism("midpoint(0,2,0,1,1)"), ValidityError);
  try {
    make_mechanism("nope");
  } catch (const UnknownMechanismError& e) {
    EXPECT_NE(std::string(e.what()).find("rand-multi-canonical"), std::string::npos);
  }
}

}  // namespace
}  // namespace facmech
