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

// Release acceptance: full sample counts, seed 42. Prints one PASS/FAIL line
// per criterion, then checks each one and cross-checks the frozen constants
// directly.

#include <cmath>
#include <iostream>
#include <vector>

#include <gtest/gtest.h>

#include "facmech/acceptance.hpp"

namespace facmech {
namespace {

std::vector<CriterionResult>& results() {
  static std::vector<CriterionResult> r;
  return r;
}

const CriterionResult& criterion(char id) {
  for (const auto& r : results()) {
    if (r.name.size() > 1 && r.name[1] == id) return r;
  }
  throw std::out_of_range("no criterion C" + std::string(1, id));
}

#define ACCEPT(id)                                                   \
  TEST(Acceptance, C##id) {                                          \
    const CriterionResult& r = criterion(#id[0]);                    \
    EXPECT_TRUE(r.passed) << r.name << ": " << r.summary << "\n"     \
                          << r.details.dump(2);                      \
  }

ACCEPT(1)
ACCEPT(2)
ACCEPT(3)
ACCEPT(4)
ACCEPT(5)
ACCEPT(6)
ACCEPT(7)
ACCEPT(8)
ACCEPT(9)

TEST(Acceptance, FrozenConstants) {
  const auto& c1 = criterion('1').details;
  EXPECT_NEAR(c1["expected_benefit"].get<double>(), 39.0 / 23.0, 1e-12);
  EXPECT_EQ(c1["opt_value"].get<double>(), 3.0);
  EXPECT_NEAR(c1["ratio"].get<double>(), 23.0 / 13.0, 1e-12);

  EXPECT_NEAR(criterion('2').details["family_ratio"].get<double>(), (3.0 - 1e-3) / (1.0 + 1e-3),
              1e-12);
  EXPECT_LE(criterion('2').details["search"]["worst_ratio"].get<double>(), 3.0 + 1e-9);
  EXPECT_EQ(criterion('2').details["search"]["evaluated"].get<std::size_t>(), 100000u);

  EXPECT_EQ(criterion('6').details["ratio"], "inf");

  const auto& c7 = criterion('7').details;
  EXPECT_NEAR(c7["worked_det_multi"].get<double>(), 1.4, 1e-9);
  EXPECT_NEAR(c7["worked_rand_multi_canonical"].get<double>(), 3.5 / (8.5 / 3.0), 1e-9);

  const auto& c8 = criterion('8').details;
  EXPECT_EQ(c8["thm62_n"].get<std::size_t>(), 224u);
  EXPECT_NEAR(c8["thm62_opt_egalitarian"].get<double>(), 0.5, 1e-9);
  EXPECT_NEAR(c8["certificate_62"]["measurements"]["p_bound"].get<double>(), 100.0 / 207.0,
              1e-9);
  EXPECT_EQ(c8["certificate_61"]["verdict"], "consistent");
}

}  // namespace
}  // namespace facmech

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  facmech::results() = facmech::run_acceptance({});
  for (const auto& r : facmech::results()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " | " << r.summary << '\n';
  }
  std::cout.flush();
  return RUN_ALL_TESTS();
}
