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

#include "dpsr/results_io.h"

#include <cmath>
#include <filesystem>
#include <vector>

#include "absl/strings/str_split.h"
#include "dpsr/random.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsr {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

std::vector<ExperimentResult> RandomResults(Rng& rng) {
  const double epsilons[] = {0.1, 0.5, 1.0, 5.0, 10.0, 0.25};
  const Method methods[] = {Method::kDpsr, Method::kGaussian, Method::kLaplace,
                            Method::kNoPrivacy};
  std::vector<ExperimentResult> out;
  const int rows = 1 + static_cast<int>(rng.UniformIndex(20));
  for (int i = 0; i < rows; ++i) {
    ExperimentResult r;
    r.method = methods[rng.UniformIndex(4)];
    if (r.method != Method::kNoPrivacy) r.epsilon = epsilons[rng.UniformIndex(6)];
    r.seed = rng.UniformIndex(1000);
    r.metrics = {QuantizeMetric(2 * rng.Uniform()),
                 QuantizeMetric(2 * rng.Uniform()),
                 QuantizeMetric(rng.Uniform()), QuantizeMetric(rng.Uniform())};
    r.wall_time_seconds = QuantizeMetric(10 * rng.Uniform());
    if (rng.Uniform() < 0.1) {
      r.metrics = {NAN, NAN, NAN, NAN};
      r.error = "failed";
    }
    out.push_back(r);
  }
  return out;
}

TEST(ResultsCsvTest, RoundTrips) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ExperimentResult> rows = RandomResults(rng);
    const std::string text = FormatResultsCsv(rows);
    auto parsed = ParseResultsCsv(text);
    ASSERT_TRUE(parsed.ok()) << parsed.status();
    std::sort(rows.begin(), rows.end(), ResultLess);
    ASSERT_EQ(parsed->size(), rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ((*parsed)[i], rows[i]) << "row " << i;
    }
    EXPECT_EQ(FormatResultsCsv(*parsed), text);
  }
}

TEST(ResultsCsvTest, HeaderSortingAndEmptyEpsilon) {
  ExperimentResult a;
  a.method = Method::kNoPrivacy;
  a.seed = 1;
  a.metrics = {1.5, 1.2, 0.3, 0.4};
  ExperimentResult b = a;
  b.method = Method::kDpsr;
  b.epsilon = 0.5;
  const std::string text = FormatResultsCsv({a, b});
  const std::vector<std::string> lines = absl::StrSplit(text, '\n');
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[0], kResultsHeader);
  EXPECT_EQ(lines[1],
            "dpsr,0.500000,1,1.500000,1.200000,0.300000,0.400000,0.000000");
  EXPECT_EQ(lines[2],
            "no_privacy,,1,1.500000,1.200000,0.300000,0.400000,0.000000");
}

TEST(ResultsCsvTest, RejectsMalformedInput) {
  EXPECT_FALSE(ParseResultsCsv("").ok());
  EXPECT_FALSE(ParseResultsCsv("a,b\n").ok());
  const std::string header(kResultsHeader);
  EXPECT_FALSE(ParseResultsCsv(header + "\ndpsr,1,0\n").ok());
  EXPECT_FALSE(ParseResultsCsv(header + "\nfoo,1,0,1,1,1,1,0\n").ok());
  EXPECT_FALSE(ParseResultsCsv(header + "\ndpsr,x,0,1,1,1,1,0\n").ok());
}

TEST(SummaryCsvTest, ImprovementFileFormat) {
  Summary s;
  EpsilonComparison c;
  c.epsilon = 1.0;
  c.improvement_vs_laplace_pct = 9.5;
  c.t_stat = 3.25;
  c.p_value = 0.0123;
  s.comparisons.push_back(c);
  const std::string text = FormatImprovementCsv(s);
  EXPECT_THAT(text, StartsWith(std::string(kImprovementHeader) + "\n"));
  EXPECT_THAT(text, HasSubstr("1.000000,9.500000,,3.25,0.0123\n"));
  EXPECT_THAT(FormatNoPrivacyCsv(s), StartsWith(kNoPrivacyHeader));
  EXPECT_THAT(FormatSummaryCsv(s), StartsWith(kSummaryHeader));
}

TEST(FilesTest, WriteReadAndSiblingPaths) {
  const std::string dir = ::testing::TempDir();
  const std::string path = dir + "/results_io_test.csv";
  ASSERT_TRUE(WriteTextFile(path, "hello\n").ok());
  auto text = ReadTextFile(path);
  ASSERT_TRUE(text.ok());
  EXPECT_EQ(*text, "hello\n");
  std::filesystem::remove(path);
  EXPECT_FALSE(ReadTextFile(path).ok());
  EXPECT_EQ(SiblingPath("a/results.csv", "summary"), "a/results_summary.csv");
  EXPECT_EQ(SiblingPath("out", "summary"), "out_summary.csv");
}

}  // namespace
}  // namespace dpsr
