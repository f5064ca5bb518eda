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

#ifndef DPSR_DP_MECHANISMS_H_
#define DPSR_DP_MECHANISMS_H_

#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsr/random.h"
#include "dpsr/ratings.h"

namespace dpsr {

// Rating sensitivity is RatingMatrix::sensitivity(): r_max - r_min.

struct PrivacyBudget {
  double epsilon = 1.0;
  // Present only for the Gaussian mechanism.
  std::optional<double> delta;

  absl::Status Validate() const;
};

struct CalibrationParams {
  // Noise reduction factor in [0, 1]; 0 disables calibration.
  double alpha = 0.3;
};

// clip(|r - r_bar| / ((r_max - r_min) / 2), 0, 1).
absl::StatusOr<double> InformationWeight(double r, double r_bar, double r_min,
                                         double r_max);

// Per-cell budget with the strict base budget eps / (1 + alpha):
//   eps_ij = eps / (1 + alpha) * (1 + alpha * w)
// so the largest budget any cell receives is exactly eps.
absl::StatusOr<double> AdaptiveBudget(double epsilon, double alpha,
                                      double weight);

// Zero-centred Laplace draw by inverse CDF of a single uniform.
absl::StatusOr<double> LaplaceSample(double scale, Rng& rng);

// Laplace scale Delta_r / eps_ij for every observed cell, in mask order. The
// global mean behind the weights is taken from the unperturbed input.
absl::StatusOr<std::vector<double>> CalibratedNoiseScales(
    const RatingMatrix& ratings, double epsilon,
    const CalibrationParams& params);

// Observed values plus calibrated Laplace noise, before clipping, in mask
// order. Consumes one uniform per observed cell.
absl::StatusOr<std::vector<double>> CalibratedNoisyValues(
    const RatingMatrix& ratings, double epsilon,
    const CalibrationParams& params, Rng& rng);

// Stage 1 of the pipeline: CalibratedNoisyValues clipped to the rating range.
// Unobserved cells and the mask are unchanged.
absl::StatusOr<RatingMatrix> CalibratedNoiseStage1(
    const RatingMatrix& ratings, double epsilon,
    const CalibrationParams& params, Rng& rng);

// Observed values plus i.i.d. Laplace(Delta_r / eps), before clipping.
absl::StatusOr<std::vector<double>> LaplaceNoisyValues(
    const RatingMatrix& ratings, double epsilon, Rng& rng);

absl::StatusOr<RatingMatrix> LaplaceMechanism(const RatingMatrix& ratings,
                                              double epsilon, Rng& rng);

// Minimal sigma for (eps, delta)-DP: Delta_r * sqrt(2 ln(1.25 / delta)) / eps.
absl::StatusOr<double> GaussianSigma(double delta_r, double epsilon,
                                     double delta);

// Observed values plus i.i.d. Normal(0, sigma^2), before clipping.
absl::StatusOr<std::vector<double>> GaussianNoisyValues(
    const RatingMatrix& ratings, double epsilon, double delta, Rng& rng);

absl::StatusOr<RatingMatrix> GaussianMechanism(const RatingMatrix& ratings,
                                               double epsilon, double delta,
                                               Rng& rng);

}  // namespace dpsr

#endif  // DPSR_DP_MECHANISMS_H_
