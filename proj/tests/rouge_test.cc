// Copyright 2026 The Factsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "factsum/rouge.h"

#include <random>

#include <gtest/gtest.h>

#include "factsum/status.h"
#include "oracles.h"
#include "test_util.h"

namespace factsum {
namespace {

using testing::Words;

TEST(RougeNTest, IdentityScoresOne) {
  const RougeScore s = RougeN(Words("the cat sat"), Words("the cat sat"), 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
}

TEST(RougeNTest, DisjointBigramsScoreZero) {
  const RougeScore s = RougeN(Words("the cat sat"), Words("a dog ran"), 2);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(RougeNTest, ClippedUnigramOverlap) {
  const auto cand = Words("the cat sat on the mat");
  const auto ref = Words("the cat ate the fish");
  // Oracle first: overlap is "the" x2 plus "cat".
  const testing::PRF oracle = testing::BruteRougeN(cand, ref, 1);
  EXPECT_DOUBLE_EQ(oracle.p, 0.5);
  EXPECT_DOUBLE_EQ(oracle.r, 0.6);
  EXPECT_NEAR(oracle.f, 6.0 / 11.0, 1e-15);

  const RougeScore s = RougeN(cand, ref, 1);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.6);
  EXPECT_NEAR(s.f1, 0.5454545454545454, 1e-15);
}

TEST(RougeNTest, ZeroOrderIsUsageError) {
  EXPECT_THROW(RougeN(Words("a"), Words("a"), 0), UsageError);
}

TEST(RougeNTest, SideWithoutNgramsGivesZeroRatio) {
  const RougeScore s = RougeN(Words("a"), Words("a b"), 2);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(RougeLTest, IdentityScoresOne) {
  const RougeScore s = RougeL(Words("x y z"), Words("x y z"));
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
}

TEST(RougeLTest, SubsequenceExample) {
  const auto cand = Words("the cat sat");
  const auto ref = Words("the sat");
  EXPECT_EQ(testing::BruteLcs(cand, ref), 2);
  const RougeScore s = RougeL(cand, ref);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_NEAR(s.f1, 0.8, 1e-15);
}

TEST(RougeLTest, DisjointAndEmpty) {
  EXPECT_EQ(RougeL(Words("a b"), Words("c d")).f1, 0.0);
  EXPECT_EQ(RougeL({}, Words("c d")).f1, 0.0);
  EXPECT_EQ(RougeL({}, {}).f1, 0.0);
}

TEST(RougeSuiteTest, IdentityAndDisjoint) {
  const RougeSuite same = ComputeRouge(Words("a b c"), Words("a b c"));
  EXPECT_DOUBLE_EQ(same.r1.f1, 1.0);
  EXPECT_DOUBLE_EQ(same.r2.f1, 1.0);
  EXPECT_DOUBLE_EQ(same.rl.f1, 1.0);
  const RougeSuite apart = ComputeRouge(Words("a b c"), Words("d e f"));
  EXPECT_EQ(apart.r1.f1, 0.0);
  EXPECT_EQ(apart.r2.f1, 0.0);
  EXPECT_EQ(apart.rl.f1, 0.0);
}

TEST(RougeSuiteTest, WorkedExampleMatchesOracles) {
  const auto cand = Words("the cat sat on the mat");
  const auto ref = Words("the cat ate the fish");
  const RougeSuite s = ComputeRouge(cand, ref);
  EXPECT_NEAR(s.r1.f1, 6.0 / 11.0, 1e-15);
  // Bigram oracle: only "the cat" is shared, so p = 1/5, r = 1/4.
  const testing::PRF r2 = testing::BruteRougeN(cand, ref, 2);
  EXPECT_DOUBLE_EQ(r2.p, 0.2);
  EXPECT_DOUBLE_EQ(r2.r, 0.25);
  EXPECT_DOUBLE_EQ(s.r2.f1, r2.f);
  // LCS oracle: "the cat the" has length 3, so p = 1/2, r = 3/5.
  EXPECT_EQ(testing::BruteLcs(cand, ref), 3);
  const testing::PRF rl = testing::BruteRougeL(cand, ref);
  EXPECT_DOUBLE_EQ(s.rl.f1, rl.f);
  EXPECT_NEAR(s.rl.f1, 6.0 / 11.0, 1e-15);
}

class RougePropertyTest : public ::testing::Test {
 protected:
  std::mt19937 rng_{20260417};
};

TEST_F(RougePropertyTest, MatchesBruteForceAndStaysInRange) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = testing::RandomSeq(rng_, 6, 10);
    const auto r = testing::RandomSeq(rng_, 6, 10);
    for (int n = 1; n <= 3; ++n) {
      const RougeScore s = RougeN(c, r, n);
      const testing::PRF o = testing::BruteRougeN(c, r, n);
      EXPECT_EQ(s.precision, o.p);
      EXPECT_EQ(s.recall, o.r);
      EXPECT_EQ(s.f1, o.f);
      EXPECT_GE(s.f1, 0.0);
      EXPECT_LE(s.f1, 1.0);
    }
    EXPECT_EQ(LcsLength(c, r), testing::BruteLcs(c, r));
  }
}

TEST_F(RougePropertyTest, SwapSymmetry) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testing::RandomSeq(rng_, 5, 9);
    const auto r = testing::RandomSeq(rng_, 5, 9);
    for (int n = 1; n <= 2; ++n) {
      EXPECT_EQ(RougeN(c, r, n).precision, RougeN(r, c, n).recall);
    }
    EXPECT_EQ(RougeL(c, r).precision, RougeL(r, c).recall);
  }
}

TEST_F(RougePropertyTest, AppendingNeverLowersUnigramRecall) {
  for (int trial = 0; trial < 200; ++trial) {
    auto c = testing::RandomSeq(rng_, 5, 8);
    const auto r = testing::RandomSeq(rng_, 5, 8);
    const double before = RougeN(c, r, 1).recall;
    c.push_back(std::string(1, static_cast<char>('a' + trial % 5)));
    EXPECT_GE(RougeN(c, r, 1).recall, before);
  }
}

TEST(NgramCountsTest, CountsMultiplicities) {
  const NgramCounts counts(Words("a b a b a"), 2);
  EXPECT_EQ(counts.total(), 4);
  EXPECT_EQ(counts.counts().at(Words("a b")), 2);
  EXPECT_EQ(counts.counts().at(Words("b a")), 2);
}

}  // namespace
}  // namespace factsum
