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

#include "dpsr/stats.h"

#include <cmath>
#include <limits>
#include <vector>

#include "dpsr/random.h"
#include "gtest/gtest.h"

namespace dpsr {
namespace {

TEST(PairedTTestTest, IdenticalSamples) {
  const std::vector<double> a = {1.0, 2.0, 3.5};
  auto r = PairedTTest(a, a);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->t_stat, 0.0);
  EXPECT_EQ(r->p_value, 1.0);
  EXPECT_EQ(r->dof, 2);
}

TEST(PairedTTestTest, FrozenReferenceValues) {
  const std::vector<double> b(5, 0.0);
  const std::vector<double> a = {1.0, 1.1, 0.9, 1.0, 1.0};
  auto r = PairedTTest(a, b);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->t_stat, 31.62277660168379, 1e-9);
  EXPECT_NEAR(r->p_value, 5.960208996599507e-06, 1e-15);
  EXPECT_EQ(r->dof, 4);

  const std::vector<double> c = {1.2, 0.4, 2.2, 1.0, 0.3, 1.9};
  const std::vector<double> d = {1.0, 0.9, 1.6, 1.1, 0.2, 1.4};
  r = PairedTTest(c, d);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->t_stat, 0.8097763301789159, 1e-9);
  EXPECT_NEAR(r->p_value, 0.4548641374852214, 1e-9);
}

TEST(PairedTTestTest, ConstantNonzeroDifference) {
  const std::vector<double> a = {2.0, 3.0, 4.0};
  const std::vector<double> b = {1.0, 2.0, 3.0};
  auto r = PairedTTest(a, b);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->t_stat, std::numeric_limits<double>::infinity());
  EXPECT_EQ(r->p_value, 0.0);
  r = PairedTTest(b, a);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->t_stat, -std::numeric_limits<double>::infinity());
}

TEST(PairedTTestTest, Antisymmetric) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(10));
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rng.StandardNormal();
      b[i] = rng.StandardNormal();
    }
    auto ab = PairedTTest(a, b);
    auto ba = PairedTTest(b, a);
    ASSERT_TRUE(ab.ok() && ba.ok());
    EXPECT_NEAR(ab->t_stat, -ba->t_stat, 1e-12 * std::abs(ab->t_stat));
    EXPECT_NEAR(ab->p_value, ba->p_value, 1e-12);
    EXPECT_GE(ab->p_value, 0.0);
    EXPECT_LE(ab->p_value, 1.0);
  }
}

TEST(PairedTTestTest, RejectsBadInput) {
  const std::vector<double> one = {1.0}, two = {1.0, 2.0},
                            three = {1.0, 2.0, 3.0};
  EXPECT_FALSE(PairedTTest(one, one).ok());
  EXPECT_FALSE(PairedTTest(two, three).ok());
}

TEST(StudentTTest, KnownTailProbabilities) {
  EXPECT_DOUBLE_EQ(StudentTTwoSidedP(0.0, 4), 1.0);
  // Cauchy: P(|T| > 1) = 1/2.
  EXPECT_NEAR(StudentTTwoSidedP(1.0, 1), 0.5, 1e-14);
  // dof 2 has the closed form 1 - t / sqrt(2 + t^2).
  EXPECT_NEAR(StudentTTwoSidedP(1.5, 2), 1.0 - 1.5 / std::sqrt(4.25), 1e-14);
  EXPECT_DOUBLE_EQ(StudentTTwoSidedP(-1.5, 2), StudentTTwoSidedP(1.5, 2));
}

TEST(StatsHelpersTest, MeanAndSampleStd) {
  const std::vector<double> x = {2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(Mean(x), 5.0);
  EXPECT_NEAR(SampleStd(x), std::sqrt(32.0 / 7.0), 1e-14);
}

}  // namespace
}  // namespace dpsr
