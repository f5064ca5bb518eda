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

#ifndef DPSR_EXPERIMENT_H_
#define DPSR_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpsr/cf_denoise.h"
#include "dpsr/dp_mechanisms.h"
#include "dpsr/eval.h"
#include "dpsr/lowrank_complete.h"
#include "dpsr/random.h"
#include "dpsr/ratings.h"

namespace dpsr {

struct DpsrParams {
  double alpha = 0.3;
  double beta = 0.65;
  int k_neighbors = 15;
  int rank_d = 8;
  double lambda_mix = 0.7;
  int n_iter = 50;
  int t_reproject = 10;

  CalibrationParams calibration() const { return {alpha}; }
  DenoiseParams denoise() const { return {beta, k_neighbors}; }
  LowRankParams low_rank() const {
    return {rank_d, lambda_mix, n_iter, t_reproject};
  }
  absl::Status Validate(int m, int n) const;
};

// Names sort in this order, which is also the CSV row order.
enum class Method { kDpsr, kGaussian, kLaplace, kNoPrivacy };

absl::string_view MethodName(Method method);
absl::StatusOr<Method> ParseMethod(absl::string_view name);

// How DPSR output reaches the test metrics. kTrainMf trains the shared MF on
// the denoised train cells like every other method; kDirect reads the dense
// Stage 3 matrix at the test cells.
enum class DpsrEvalMode { kTrainMf, kDirect };

struct ExperimentConfig {
  SynthConfig synth;  // synth.seed is replaced by each grid seed
  std::vector<double> epsilons = {0.1, 0.5, 1.0, 5.0, 10.0};
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4};
  std::vector<Method> methods = {Method::kDpsr, Method::kLaplace,
                                 Method::kGaussian, Method::kNoPrivacy};
  DpsrParams dpsr_params;
  MfConfig mf;
  double delta = 1e-5;
  double test_fraction = 0.2;
  std::string output_path = "results.csv";
  DpsrEvalMode dpsr_eval = DpsrEvalMode::kTrainMf;
  // Worker threads for grid cells; results do not depend on it.
  int threads = 1;
  // When false the wall_time_s column is written as 0 so that identical
  // configurations produce byte-identical results files.
  bool record_wall_time = false;

  absl::Status Validate() const;
};

struct ExperimentResult {
  Method method = Method::kNoPrivacy;
  std::optional<double> epsilon;  // empty for no_privacy
  uint64_t seed = 0;
  MetricReport metrics;
  double wall_time_seconds = 0.0;
  // Non-empty when the cell failed; metrics are then NaN.
  std::string error;

  bool ok() const { return error.empty(); }
  friend bool operator==(const ExperimentResult&, const ExperimentResult&);
};

// Orders by (method name, epsilon, seed), no_privacy's missing epsilon first.
bool ResultLess(const ExperimentResult& a, const ExperimentResult& b);

// Rounds to 6 decimals, the precision of the results file.
double QuantizeMetric(double x);

// Stage 1, 2 and 3 in order. Only Stage 1 draws from `rng`.
absl::StatusOr<RatingMatrix> RunDpsrPipeline(const RatingMatrix& train,
                                             double epsilon,
                                             const DpsrParams& params,
                                             Rng& rng);

// Data for one grid seed: the full synthetic matrix and its split.
struct SeedData {
  RatingMatrix full;
  TrainTestSplit split;
  RatingMatrix train;
};

absl::StatusOr<SeedData> PrepareSeed(const ExperimentConfig& cfg,
                                     uint64_t seed);

// One (method, epsilon) cell on prepared data. Never fails: errors land in
// ExperimentResult::error.
ExperimentResult RunCell(const ExperimentConfig& cfg, const SeedData& data,
                         uint64_t seed, Method method,
                         std::optional<double> epsilon);

// Full grid: no_privacy once per seed, every other method once per
// (epsilon, seed). Sorted with ResultLess.
absl::StatusOr<std::vector<ExperimentResult>> RunGrid(
    const ExperimentConfig& cfg);

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;
};

struct CellSummary {
  Method method = Method::kNoPrivacy;
  std::optional<double> epsilon;
  int runs = 0;
  MetricStats rmse, mae, precision_at_10, ndcg_at_10;
};

struct EpsilonComparison {
  double epsilon = 0.0;
  // 100 * (base - dpsr) / base on mean RMSE.
  std::optional<double> improvement_vs_laplace_pct;
  std::optional<double> improvement_vs_gaussian_pct;
  std::optional<double> improvement_vs_no_privacy_pct;
  std::optional<double> dpsr_rmse_mean;
  std::optional<double> no_privacy_rmse_mean;
  // DPSR vs Laplace paired by seed on per-seed RMSE (t > 0: Laplace worse).
  std::optional<double> t_stat;
  std::optional<double> p_value;
};

struct Summary {
  std::vector<CellSummary> cells;
  std::vector<EpsilonComparison> comparisons;
  // Human-readable notes about missing cells or unpaired seeds.
  std::vector<std::string> gaps;
};

// Aggregates successful rows; failed rows and missing cells become gaps.
Summary Summarize(const std::vector<ExperimentResult>& results);

}  // namespace dpsr

#endif  // DPSR_EXPERIMENT_H_
