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

#include "dpsr/cf_denoise.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"

namespace dpsr {

absl::Status DenoiseParams::Validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("beta must be in [0, 1], got %g", beta));
  }
  if (k_neighbors < 1) {
    return absl::InvalidArgumentError("k_neighbors must be >= 1");
  }
  return absl::OkStatus();
}

ItemSimilarityMatrix ItemPearson(const RatingMatrix& noisy) {
  const int m = noisy.rows();
  const int n = noisy.cols();

  // Deviations from the per-item mean on observed cells, 0 elsewhere. The
  // Gram matrix of the deviations is then the co-rater numerator, and its
  // diagonal holds the full-column sums of squares.
  Eigen::MatrixXd deviation = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd observed = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(n);
  for (const Cell& c : noisy.mask().cells()) {
    sum(c.item) += noisy(c.user, c.item);
    count(c.item) += 1.0;
    observed(c.user, c.item) = 1.0;
  }
  for (const Cell& c : noisy.mask().cells()) {
    deviation(c.user, c.item) = noisy(c.user, c.item) - sum(c.item) / count(c.item);
  }

  const Eigen::MatrixXd cross = deviation.transpose() * deviation;
  const Eigen::MatrixXd co_raters = observed.transpose() * observed;

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double denom = std::sqrt(cross(j, j)) * std::sqrt(cross(k, k));
      if (co_raters(j, k) < 2.0 || !(denom > 0.0)) continue;
      const double value = std::clamp(cross(j, k) / denom, -1.0, 1.0);
      s(j, k) = value;
      s(k, j) = value;
    }
  }
  return ItemSimilarityMatrix(std::move(s));
}

std::vector<int> TopKNeighbors(const ItemSimilarityMatrix& similarity, int item,
                               int k) {
  std::vector<int> candidates;
  candidates.reserve(similarity.size());
  for (int other = 0; other < similarity.size(); ++other) {
    if (other != item && similarity(item, other) != 0.0) {
      candidates.push_back(other);
    }
  }
  auto stronger = [&](int a, int b) {
    const double sa = std::abs(similarity(item, a));
    const double sb = std::abs(similarity(item, b));
    return sa != sb ? sa > sb : a < b;
  };
  const size_t keep = std::min(candidates.size(), static_cast<size_t>(std::max(k, 0)));
  std::partial_sort(candidates.begin(), candidates.begin() + keep,
                    candidates.end(), stronger);
  candidates.resize(keep);
  return candidates;
}

absl::StatusOr<RatingMatrix> Stage2Denoise(const RatingMatrix& noisy,
                                           const DenoiseParams& params) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  const ItemSimilarityMatrix similarity = ItemPearson(noisy);

  std::vector<std::vector<int>> neighbours(noisy.cols());
  for (int j = 0; j < noisy.cols(); ++j) {
    neighbours[j] = TopKNeighbors(similarity, j, params.k_neighbors);
  }

  const ObservationMask& mask = noisy.mask();
  Eigen::MatrixXd out = noisy.values();
  for (const Cell& c : mask.cells()) {
    double weighted = 0.0;
    double weight = 0.0;
    for (int k : neighbours[c.item]) {
      if (!mask.Contains(c.user, k)) continue;
      const double s = std::abs(similarity(c.item, k));
      weighted += s * noisy(c.user, k);
      weight += s;
    }
    if (weight <= 0.0) continue;
    const double blended =
        params.beta * noisy(c.user, c.item) + (1.0 - params.beta) * weighted / weight;
    out(c.user, c.item) = ClipToRange(blended, noisy.r_min(), noisy.r_max());
  }
  return noisy.WithValues(std::move(out));
}

}  // namespace dpsr
