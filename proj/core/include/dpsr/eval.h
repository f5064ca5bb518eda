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

#ifndef DPSR_EVAL_H_
#define DPSR_EVAL_H_

#include <functional>
#include <span>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsr/random.h"
#include "dpsr/ratings.h"

namespace dpsr {

// Downstream matrix factorisation shared by every method. No bias terms.
struct MfConfig {
  int latent_d = 8;
  int epochs = 50;
  double learn_rate = 0.01;
  double init_std = 0.1;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double reg_weight = 0.02;

  absl::Status Validate() const;
};

struct MfModel {
  Eigen::MatrixXd p_user;  // m x d
  Eigen::MatrixXd q_item;  // n x d
  double r_min = 1.0;
  double r_max = 5.0;
};

struct MfGradient {
  Eigen::MatrixXd p_user;
  Eigen::MatrixXd q_item;
};

// mean over observed (r_ij - p_i . q_j)^2 + reg * (|P|^2 + |Q|^2) / |Omega|
double MfLoss(const MfModel& model, const RatingMatrix& train,
              double reg_weight);
MfGradient MfLossGradient(const MfModel& model, const RatingMatrix& train,
                          double reg_weight);

// Full-batch Adam on MfLoss for exactly cfg.epochs steps. Factors start
// i.i.d. Normal(0, init_std^2), P then Q in row-major order. When
// `loss_trace` is set it receives the loss before every step and once more
// after the last.
absl::StatusOr<MfModel> TrainMf(const RatingMatrix& train, const MfConfig& cfg,
                                Rng& rng,
                                std::vector<double>* loss_trace = nullptr);

// clip(p_i . q_j, r_min, r_max)
absl::StatusOr<double> Predict(const MfModel& model, int user, int item);

absl::StatusOr<double> Rmse(std::span<const double> pred,
                            std::span<const double> truth);
absl::StatusOr<double> Mae(std::span<const double> pred,
                           std::span<const double> truth);

struct ScoredItem {
  int item = 0;
  double predicted = 0.0;
  double truth = 0.0;
};

// One user's held-out items.
using UserTestItems = std::vector<ScoredItem>;

inline constexpr double kRelevanceThreshold = 3.5;

// Items ranked by predicted score descending, ties by item index. Precision
// divides the relevant count in the top min(k, |items|) by k. Users without
// test items are skipped; fails when none remain.
absl::StatusOr<double> PrecisionAtK(std::span<const UserTestItems> users,
                                    int k,
                                    double threshold = kRelevanceThreshold);

// Binary gains, log2(rank + 1) discount, per-user NDCG 0 when no item is
// relevant.
absl::StatusOr<double> NdcgAtK(std::span<const UserTestItems> users, int k,
                               double threshold = kRelevanceThreshold);

struct MetricReport {
  double rmse = 0.0;
  double mae = 0.0;
  double precision_at_10 = 0.0;
  double ndcg_at_10 = 0.0;
};

// Predictions for the cells of `test`, grouped by user.
std::vector<UserTestItems> GroupTestItems(
    const ObservationMask& test, const Eigen::MatrixXd& truth,
    const std::function<double(int, int)>& predict);

// All four metrics on `test`, truth read from `truth` at those cells.
absl::StatusOr<MetricReport> EvaluatePredictions(
    const ObservationMask& test, const Eigen::MatrixXd& truth,
    const std::function<double(int, int)>& predict);

}  // namespace dpsr

#endif  // DPSR_EVAL_H_
