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

#include "dpsr/lowrank_complete.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "Eigen/SVD"
#include "absl/strings/str_format.h"

namespace dpsr {

absl::Status LowRankParams::Validate(int m, int n) const {
  if (rank_d < 1 || rank_d > std::min(m, n)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "rank_d=%d outside [1, %d]", rank_d, std::min(m, n)));
  }
  if (!(lambda_mix >= 0.0 && lambda_mix <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("lambda_mix must be in [0, 1], got %g", lambda_mix));
  }
  if (n_iter < 0) return absl::InvalidArgumentError("n_iter must be >= 0");
  if (t_reproject < 1) {
    return absl::InvalidArgumentError("t_reproject must be >= 1");
  }
  return absl::OkStatus();
}

Eigen::MatrixXd SvdFactors::Reconstruct() const {
  return u_left * sigma.asDiagonal() * v_right.transpose();
}

Eigen::MatrixXd FillUnobserved(const RatingMatrix& ratings, double fill) {
  Eigen::MatrixXd out =
      Eigen::MatrixXd::Constant(ratings.rows(), ratings.cols(), fill);
  for (const Cell& c : ratings.mask().cells()) {
    out(c.user, c.item) = ratings(c.user, c.item);
  }
  return out;
}

absl::StatusOr<SvdFactors> TruncatedSvd(const Eigen::MatrixXd& matrix, int d) {
  const auto full_rank = static_cast<int>(std::min(matrix.rows(), matrix.cols()));
  if (d < 1 || d > full_rank) {
    return absl::InvalidArgumentError(
        absl::StrFormat("rank %d outside [1, %d]", d, full_rank));
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactors f{svd.matrixU().leftCols(d), svd.singularValues().head(d),
               svd.matrixV().leftCols(d)};
  for (int col = 0; col < d; ++col) {
    Eigen::Index pivot = 0;
    f.u_left.col(col).cwiseAbs().maxCoeff(&pivot);
    if (f.u_left(pivot, col) < 0.0) {
      f.u_left.col(col) *= -1.0;
      f.v_right.col(col) *= -1.0;
    }
  }
  return f;
}

absl::StatusOr<RatingMatrix> Stage3Complete(const RatingMatrix& denoised,
                                            const LowRankParams& params,
                                            const Stage3Observer& observer) {
  if (absl::Status s = params.Validate(denoised.rows(), denoised.cols());
      !s.ok()) {
    return s;
  }
  absl::StatusOr<double> mean = GlobalMean(denoised);
  if (!mean.ok()) return mean.status();

  absl::StatusOr<SvdFactors> initial =
      TruncatedSvd(FillUnobserved(denoised, *mean), params.rank_d);
  if (!initial.ok()) return initial.status();
  Eigen::MatrixXd iterate = initial->Reconstruct();

  const auto cells = denoised.mask().cells();
  const double keep = params.lambda_mix;
  for (int t = 0; t < params.n_iter; ++t) {
    for (const Cell& c : cells) {
      double& v = iterate(c.user, c.item);
      v = keep * v + (1.0 - keep) * denoised(c.user, c.item);
    }
    const bool reproject = (t + 1) % params.t_reproject == 0;
    if (reproject) {
      absl::StatusOr<SvdFactors> f = TruncatedSvd(iterate, params.rank_d);
      if (!f.ok()) return f.status();
      iterate = f->Reconstruct();
    }
    if (observer) observer(t, iterate, reproject);
  }

  iterate = iterate.cwiseMax(denoised.r_min()).cwiseMin(denoised.r_max());
  return denoised.WithValues(std::move(iterate));
}

}  // namespace dpsr
