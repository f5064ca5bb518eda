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

#include "dpsr/config.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsr {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(ConfigTest, EmptyTextGivesDefaults) {
  auto cfg = ParseConfigText("");
  ASSERT_TRUE(cfg.ok());
  EXPECT_EQ(cfg->synth.m, 300);
  EXPECT_THAT(cfg->epsilons, ElementsAre(0.1, 0.5, 1.0, 5.0, 10.0));
  EXPECT_EQ(cfg->dpsr_params.k_neighbors, 15);
  EXPECT_EQ(cfg->mf.epochs, 50);
  EXPECT_TRUE(cfg->Validate().ok());
}

TEST(ConfigTest, ParsesOverridesAndComments) {
  auto cfg = ParseConfigText(
      "# experiment\n"
      "synth.m = 120   # users\n"
      "epsilons = 0.5, 1\n"
      "seeds = 3,4\n"
      "methods = dpsr, laplace\n"
      "dpsr.beta = 0.8\n"
      "mf.learn_rate = 0.02\n"
      "dpsr_eval = direct\n"
      "record_wall_time = true\n"
      "output_path = out/r.csv\n");
  ASSERT_TRUE(cfg.ok()) << cfg.status();
  EXPECT_EQ(cfg->synth.m, 120);
  EXPECT_THAT(cfg->epsilons, ElementsAre(0.5, 1.0));
  EXPECT_THAT(cfg->seeds, ElementsAre(3u, 4u));
  EXPECT_THAT(cfg->methods, ElementsAre(Method::kDpsr, Method::kLaplace));
  EXPECT_EQ(cfg->dpsr_params.beta, 0.8);
  EXPECT_EQ(cfg->mf.learn_rate, 0.02);
  EXPECT_EQ(cfg->dpsr_eval, DpsrEvalMode::kDirect);
  EXPECT_TRUE(cfg->record_wall_time);
  EXPECT_EQ(cfg->output_path, "out/r.csv");
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  auto cfg = ParseConfigText("synth.m = 10\nsynth.z = 3\n");
  ASSERT_FALSE(cfg.ok());
  EXPECT_THAT(cfg.status().message(), HasSubstr("line 2"));
  EXPECT_FALSE(ParseConfigText("synth.m = ten\n").ok());
  EXPECT_FALSE(ParseConfigText("methods = dpsr,foo\n").ok());
  EXPECT_FALSE(ParseConfigText("just words\n").ok());
  EXPECT_FALSE(ParseConfigText("dpsr_eval = maybe\n").ok());
}

TEST(ConfigTest, SetValueOverridesExisting) {
  ExperimentConfig cfg;
  ASSERT_TRUE(SetConfigValue(cfg, "dpsr.k_neighbors", "7").ok());
  EXPECT_EQ(cfg.dpsr_params.k_neighbors, 7);
  EXPECT_FALSE(SetConfigValue(cfg, "nope", "1").ok());
}

TEST(ConfigTest, FormatRoundTrips) {
  ExperimentConfig cfg;
  cfg.synth.density = 0.15;
  cfg.epsilons = {0.3, 2.0};
  cfg.methods = {Method::kGaussian};
  cfg.mf.reg_weight = 0.1;
  auto parsed = ParseConfigText(FormatConfigText(cfg));
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(FormatConfigText(*parsed), FormatConfigText(cfg));
  EXPECT_EQ(parsed->synth.density, 0.15);
  EXPECT_THAT(parsed->methods, ElementsAre(Method::kGaussian));
}

}  // namespace
}  // namespace dpsr
