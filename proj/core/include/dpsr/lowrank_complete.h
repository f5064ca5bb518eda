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

#ifndef DPSR_LOWRANK_COMPLETE_H_
#define DPSR_LOWRANK_COMPLETE_H_

#include <functional>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsr/ratings.h"

namespace dpsr {

struct LowRankParams {
  int rank_d = 8;
  // Weight kept on the current iterate when pulling observed cells back
  // toward the Stage 2 values.
  double lambda_mix = 0.7;
  int n_iter = 50;
  // Re-project to rank d after iteration t whenever (t + 1) % t_reproject == 0.
  int t_reproject = 10;

  absl::Status Validate(int m, int n) const;
};

// Leading singular triplets. Each left vector is signed so that its
// largest-magnitude component (first one on ties) is non-negative; the
// matching right vector is flipped with it.
struct SvdFactors {
  Eigen::MatrixXd u_left;   // m x d, orthonormal columns
  Eigen::VectorXd sigma;    // d, non-increasing, >= 0
  Eigen::MatrixXd v_right;  // n x d, orthonormal columns

  Eigen::MatrixXd Reconstruct() const;
};

// Observed cells copied, every other cell set to `fill`.
Eigen::MatrixXd FillUnobserved(const RatingMatrix& ratings, double fill);

absl::StatusOr<SvdFactors> TruncatedSvd(const Eigen::MatrixXd& matrix, int d);

// Called once per refinement iteration with the 0-based iteration index and
// the iterate after that iteration (after re-projection when one happened).
using Stage3Observer = std::function<void(
    int iteration, const Eigen::MatrixXd& iterate, bool reprojected)>;

// Stage 3 of the pipeline: mean fill, rank-d truncation, n_iter rounds of
// observed-cell mixing with periodic re-projection, then a single clip. The
// result is dense; it carries the input mask but every cell is a prediction.
absl::StatusOr<RatingMatrix> Stage3Complete(
    const RatingMatrix& denoised, const LowRankParams& params,
    const Stage3Observer& observer = nullptr);

}  // namespace dpsr

#endif  // DPSR_LOWRANK_COMPLETE_H_
