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

#include "dpsr/dp_mechanisms.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"

namespace dpsr {
namespace {

absl::Status CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be finite and positive, got %g", epsilon));
  }
  return absl::OkStatus();
}

absl::Status CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must be in (0, 1), got %g", delta));
  }
  return absl::OkStatus();
}

absl::Status CheckNonEmpty(const RatingMatrix& ratings) {
  if (ratings.mask().empty()) {
    return absl::FailedPreconditionError("mechanism applied to an empty mask");
  }
  return absl::OkStatus();
}

// Writes clipped noisy values back onto the observed cells.
absl::StatusOr<RatingMatrix> ClipOntoMask(const RatingMatrix& ratings,
                                          const std::vector<double>& noisy) {
  Eigen::MatrixXd out = ratings.values();
  const auto cells = ratings.mask().cells();
  for (size_t idx = 0; idx < cells.size(); ++idx) {
    out(cells[idx].user, cells[idx].item) =
        ClipToRange(noisy[idx], ratings.r_min(), ratings.r_max());
  }
  return ratings.WithValues(std::move(out));
}

double LaplaceFromUniform(double scale, double u) {
  const double centred = u - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(centred));
  return centred < 0.0 ? -magnitude : magnitude;
}

}  // namespace

absl::Status PrivacyBudget::Validate() const {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (delta.has_value()) return CheckDelta(*delta);
  return absl::OkStatus();
}

absl::StatusOr<double> InformationWeight(double r, double r_bar, double r_min,
                                         double r_max) {
  if (!(r_min < r_max)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("rating bounds [%g, %g] are empty", r_min, r_max));
  }
  const double half_range = (r_max - r_min) / 2.0;
  return ClipToRange(std::abs(r - r_bar) / half_range, 0.0, 1.0);
}

absl::StatusOr<double> AdaptiveBudget(double epsilon, double alpha,
                                      double weight) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("alpha must be in [0, 1], got %g", alpha));
  }
  if (!(weight >= 0.0 && weight <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("information weight must be in [0, 1], got %g", weight));
  }
  return epsilon / (1.0 + alpha) * (1.0 + alpha * weight);
}

absl::StatusOr<double> LaplaceSample(double scale, Rng& rng) {
  if (!(scale > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Laplace scale must be positive, got %g", scale));
  }
  return LaplaceFromUniform(scale, rng.Uniform());
}

absl::StatusOr<std::vector<double>> CalibratedNoiseScales(
    const RatingMatrix& ratings, double epsilon,
    const CalibrationParams& params) {
  if (absl::Status s = CheckNonEmpty(ratings); !s.ok()) return s;
  absl::StatusOr<double> mean = GlobalMean(ratings);
  if (!mean.ok()) return mean.status();

  std::vector<double> scales;
  scales.reserve(ratings.mask().size());
  for (const Cell& c : ratings.mask().cells()) {
    absl::StatusOr<double> w = InformationWeight(
        ratings(c.user, c.item), *mean, ratings.r_min(), ratings.r_max());
    if (!w.ok()) return w.status();
    absl::StatusOr<double> budget = AdaptiveBudget(epsilon, params.alpha, *w);
    if (!budget.ok()) return budget.status();
    scales.push_back(ratings.sensitivity() / *budget);
  }
  return scales;
}

absl::StatusOr<std::vector<double>> CalibratedNoisyValues(
    const RatingMatrix& ratings, double epsilon,
    const CalibrationParams& params, Rng& rng) {
  absl::StatusOr<std::vector<double>> scales =
      CalibratedNoiseScales(ratings, epsilon, params);
  if (!scales.ok()) return scales.status();
  std::vector<double> noisy = ratings.ObservedValues();
  for (size_t idx = 0; idx < noisy.size(); ++idx) {
    noisy[idx] += LaplaceFromUniform((*scales)[idx], rng.Uniform());
  }
  return noisy;
}

absl::StatusOr<RatingMatrix> CalibratedNoiseStage1(
    const RatingMatrix& ratings, double epsilon,
    const CalibrationParams& params, Rng& rng) {
  absl::StatusOr<std::vector<double>> noisy =
      CalibratedNoisyValues(ratings, epsilon, params, rng);
  if (!noisy.ok()) return noisy.status();
  return ClipOntoMask(ratings, *noisy);
}

absl::StatusOr<std::vector<double>> LaplaceNoisyValues(
    const RatingMatrix& ratings, double epsilon, Rng& rng) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (absl::Status s = CheckNonEmpty(ratings); !s.ok()) return s;
  const double scale = ratings.sensitivity() / epsilon;
  std::vector<double> noisy = ratings.ObservedValues();
  for (double& v : noisy) v += LaplaceFromUniform(scale, rng.Uniform());
  return noisy;
}

absl::StatusOr<RatingMatrix> LaplaceMechanism(const RatingMatrix& ratings,
                                              double epsilon, Rng& rng) {
  absl::StatusOr<std::vector<double>> noisy =
      LaplaceNoisyValues(ratings, epsilon, rng);
  if (!noisy.ok()) return noisy.status();
  return ClipOntoMask(ratings, *noisy);
}

absl::StatusOr<double> GaussianSigma(double delta_r, double epsilon,
                                     double delta) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  if (delta_r < 0.0) {
    return absl::InvalidArgumentError("sensitivity must be non-negative");
  }
  return delta_r * std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
}

absl::StatusOr<std::vector<double>> GaussianNoisyValues(
    const RatingMatrix& ratings, double epsilon, double delta, Rng& rng) {
  absl::StatusOr<double> sigma =
      GaussianSigma(ratings.sensitivity(), epsilon, delta);
  if (!sigma.ok()) return sigma.status();
  if (absl::Status s = CheckNonEmpty(ratings); !s.ok()) return s;
  std::vector<double> noisy = ratings.ObservedValues();
  for (double& v : noisy) v += *sigma * rng.StandardNormal();
  return noisy;
}

absl::StatusOr<RatingMatrix> GaussianMechanism(const RatingMatrix& ratings,
                                               double epsilon, double delta,
                                               Rng& rng) {
  absl::StatusOr<std::vector<double>> noisy =
      GaussianNoisyValues(ratings, epsilon, delta, rng);
  if (!noisy.ok()) return noisy.status();
  return ClipOntoMask(ratings, *noisy);
}

}  // namespace dpsr
