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

#include "dpsr/random.h"

#include <cmath>
#include <set>

#include "gtest/gtest.h"

namespace dpsr {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.Uniform(), b.Uniform());
    ASSERT_EQ(a.StandardNormal(), b.StandardNormal());
  }
}

TEST(RngTest, UniformStaysInOpenInterval) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, StandardNormalMoments) {
  Rng rng(7);
  constexpr int kSamples = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = rng.StandardNormal();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / kSamples;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sum_sq / kSamples - mean * mean, 1.0, 0.015);
}

TEST(RngTest, UniformIndexCoversRange) {
  Rng rng(3);
  std::set<uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t k = rng.UniformIndex(7);
    ASSERT_LT(k, 7u);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(DeriveSeedTest, DependsOnEveryComponent) {
  const uint64_t base = DeriveSeed(1, "dpsr", 1.0, "noise");
  EXPECT_EQ(base, DeriveSeed(1, "dpsr", 1.0, "noise"));
  EXPECT_NE(base, DeriveSeed(2, "dpsr", 1.0, "noise"));
  EXPECT_NE(base, DeriveSeed(1, "laplace", 1.0, "noise"));
  EXPECT_NE(base, DeriveSeed(1, "dpsr", 0.5, "noise"));
  EXPECT_NE(base, DeriveSeed(1, "dpsr", 1.0, "mf"));
}

TEST(DeriveSeedTest, FnvReferenceVector) {
  // Published FNV-1a 64 test vectors.
  EXPECT_EQ(HashString(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(HashString("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace dpsr
