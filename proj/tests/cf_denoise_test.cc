//
// Copyright 2026 The DPSR Authors
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
//

#include "dpsr/cf_denoise.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpsr {
namespace {

using ::dpsr::testing::MakeRatings;
using ::dpsr::testing::RandomRatings;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

constexpr double kNa = NAN;

// Straight two-pass evaluation over explicit user sets.
double BruteForcePearson(const RatingMatrix& r, int j, int k) {
  std::vector<int> raters_j, raters_k, both;
  for (int i = 0; i < r.rows(); ++i) {
    const bool has_j = r.mask().Contains(i, j);
    const bool has_k = r.mask().Contains(i, k);
    if (has_j) raters_j.push_back(i);
    if (has_k) raters_k.push_back(i);
    if (has_j && has_k) both.push_back(i);
  }
  if (both.size() < 2) return 0.0;
  double mean_j = 0.0, mean_k = 0.0;
  for (int i : raters_j) mean_j += r(i, j);
  for (int i : raters_k) mean_k += r(i, k);
  mean_j /= raters_j.size();
  mean_k /= raters_k.size();
  double num = 0.0, den_j = 0.0, den_k = 0.0;
  for (int i : both) num += (r(i, j) - mean_j) * (r(i, k) - mean_k);
  for (int i : raters_j) den_j += (r(i, j) - mean_j) * (r(i, j) - mean_j);
  for (int i : raters_k) den_k += (r(i, k) - mean_k) * (r(i, k) - mean_k);
  if (den_j == 0.0 || den_k == 0.0) return 0.0;
  return num / std::sqrt(den_j * den_k);
}

TEST(ItemPearsonTest, PerfectPositiveAndNegative) {
  const RatingMatrix r = MakeRatings({{1, 2, 3}, {2, 4, 2}, {3, 6, 1}}, 1, 10);
  const ItemSimilarityMatrix s = ItemPearson(r);
  EXPECT_NEAR(s(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(s(0, 2), -1.0, 1e-12);
  EXPECT_EQ(s(0, 0), 0.0);
}

TEST(ItemPearsonTest, ConstantColumnGivesZero) {
  const RatingMatrix r = MakeRatings({{3, 1}, {3, 4}, {3, 2}});
  EXPECT_EQ(ItemPearson(r)(0, 1), 0.0);
}

TEST(ItemPearsonTest, FewerThanTwoCoRatersGivesZero) {
  const RatingMatrix r = MakeRatings({{1, 2}, {2, kNa}, {3, kNa}, {kNa, 5}});
  EXPECT_EQ(ItemPearson(r)(0, 1), 0.0);
}

TEST(ItemPearsonTest, MatchesBruteForceOracle) {
  Rng rng(100);
  for (int trial = 0; trial < 120; ++trial) {
    const RatingMatrix r = RandomRatings(rng, 10, 8, 0.4 + 0.5 * rng.Uniform());
    const ItemSimilarityMatrix s = ItemPearson(r);
    for (int j = 0; j < 8; ++j) {
      for (int k = 0; k < 8; ++k) {
        const double expected = j == k ? 0.0 : BruteForcePearson(r, j, k);
        ASSERT_NEAR(s(j, k), expected, 1e-10) << "trial " << trial;
        ASSERT_EQ(s(j, k), s(k, j));
        ASSERT_LE(std::abs(s(j, k)), 1.0);
      }
    }
  }
}

ItemSimilarityMatrix FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd m(n, n);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return ItemSimilarityMatrix(m);
}

TEST(TopKNeighborsTest, TwoItems) {
  EXPECT_THAT(TopKNeighbors(FromRows({{0, 0.3}, {0.3, 0}}), 0, 15), ElementsAre(1));
  EXPECT_THAT(TopKNeighbors(FromRows({{0, 0}, {0, 0}}), 0, 15), IsEmpty());
}

TEST(TopKNeighborsTest, OrdersByMagnitude) {
  const ItemSimilarityMatrix s = FromRows({{0, 0.1, -0.9, 0.5},
                                           {0.1, 0, 0, 0},
                                           {-0.9, 0, 0, 0},
                                           {0.5, 0, 0, 0}});
  EXPECT_THAT(TopKNeighbors(s, 0, 2), ElementsAre(2, 3));
  EXPECT_THAT(TopKNeighbors(s, 0, 10), ElementsAre(2, 3, 1));
}

TEST(TopKNeighborsTest, TiesBreakTowardSmallerIndex) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 8);
  m(0, 1) = m(1, 0) = 0.8;
  m(0, 7) = m(7, 0) = 0.4;
  m(0, 2) = m(2, 0) = -0.4;
  EXPECT_THAT(TopKNeighbors(ItemSimilarityMatrix(m), 0, 2), ElementsAre(1, 2));
}

TEST(Stage2DenoiseTest, BetaOneIsIdentity) {
  Rng rng(4);
  const RatingMatrix r = RandomRatings(rng, 30, 20, 0.4);
  auto out = Stage2Denoise(r, {1.0, 15});
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->values() == r.values());
}

TEST(Stage2DenoiseTest, SingleRatedItemUnchanged) {
  const RatingMatrix r = MakeRatings(
      {{4, kNa, kNa}, {1, 1, 2}, {5, 3, 4}, {2, 2, 1}});
  auto out = Stage2Denoise(r, {0.65, 15});
  ASSERT_TRUE(out.ok());
  EXPECT_EQ((*out)(0, 0), 4.0);
}

TEST(Stage2DenoiseTest, BlendExample) {
  const RatingMatrix r = MakeRatings({{4, 2}, {1, 1}, {5, 3}});
  ASSERT_GT(std::abs(ItemPearson(r)(0, 1)), 0.0);
  auto out = Stage2Denoise(r, {0.65, 15});
  ASSERT_TRUE(out.ok());
  EXPECT_NEAR((*out)(0, 0), 3.3, 1e-12);
  EXPECT_NEAR((*out)(0, 1), 0.65 * 2 + 0.35 * 4, 1e-12);
}

TEST(Stage2DenoiseTest, ReadsOnlyTheInputSnapshot) {
  // Every cell's neighbour prediction uses the original values, so
  // processing order cannot matter: compare with a by-hand evaluation.
  Rng rng(21);
  const RatingMatrix r = RandomRatings(rng, 15, 10, 0.6);
  const DenoiseParams params{0.5, 3};
  const ItemSimilarityMatrix s = ItemPearson(r);
  auto out = Stage2Denoise(r, params);
  ASSERT_TRUE(out.ok());
  for (const Cell& c : r.mask().cells()) {
    double num = 0.0, den = 0.0;
    for (int k : TopKNeighbors(s, c.item, params.k_neighbors)) {
      if (!r.mask().Contains(c.user, k)) continue;
      num += std::abs(s(c.item, k)) * r(c.user, k);
      den += std::abs(s(c.item, k));
    }
    const double expected =
        den > 0 ? ClipToRange(0.5 * r(c.user, c.item) + 0.5 * num / den, 1, 5)
                : r(c.user, c.item);
    ASSERT_NEAR((*out)(c.user, c.item), expected, 1e-12);
  }
}

TEST(Stage2DenoiseTest, DeterministicAndInRange) {
  Rng rng(9);
  const RatingMatrix r = RandomRatings(rng, 40, 30, 0.3);
  auto a = Stage2Denoise(r, {0.65, 15});
  auto b = Stage2Denoise(r, {0.65, 15});
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_TRUE(a->values() == b->values());
  EXPECT_TRUE(a->mask() == r.mask());
  for (const Cell& c : r.mask().cells()) {
    EXPECT_GE((*a)(c.user, c.item), 1.0);
    EXPECT_LE((*a)(c.user, c.item), 5.0);
  }
}

TEST(Stage2DenoiseTest, InvalidParams) {
  const RatingMatrix r = MakeRatings({{1, 2}});
  EXPECT_FALSE(Stage2Denoise(r, {1.5, 15}).ok());
  EXPECT_FALSE(Stage2Denoise(r, {0.5, 0}).ok());
}

TEST(Stage2DenoiseTest, ReducesErrorOnNoisyLowRankData) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    auto clean = GenerateSynthetic(
        {.m = 300, .n = 200, .d_true = 8, .noise_std = 0.0, .density = 0.1,
         .seed = seed});
    ASSERT_TRUE(clean.ok());
    Eigen::MatrixXd noisy = clean->values();
    Rng rng(1000 + seed);
    for (const Cell& c : clean->mask().cells()) {
      noisy(c.user, c.item) =
          ClipToRange(noisy(c.user, c.item) + 0.5 * rng.StandardNormal(), 1, 5);
    }
    auto noisy_ratings = clean->WithValues(noisy);
    ASSERT_TRUE(noisy_ratings.ok());
    auto denoised = Stage2Denoise(*noisy_ratings, {0.65, 15});
    ASSERT_TRUE(denoised.ok());
    double before = 0.0, after = 0.0;
    for (const Cell& c : clean->mask().cells()) {
      const double truth = (*clean)(c.user, c.item);
      before += std::pow(noisy(c.user, c.item) - truth, 2);
      after += std::pow((*denoised)(c.user, c.item) - truth, 2);
    }
    EXPECT_LT(after, before) << "seed " << seed;
  }
}

}  // namespace
}  // namespace dpsr
