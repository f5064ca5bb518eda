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

#ifndef DPSR_CF_DENOISE_H_
#define DPSR_CF_DENOISE_H_

#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsr/ratings.h"

namespace dpsr {

// Symmetric n x n item-item Pearson correlations in [-1, 1], zero diagonal.
class ItemSimilarityMatrix {
 public:
  explicit ItemSimilarityMatrix(Eigen::MatrixXd values)
      : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.rows()); }
  double operator()(int j, int k) const { return values_(j, k); }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
};

struct DenoiseParams {
  // Weight on the noisy rating itself; 1 disables denoising.
  double beta = 0.65;
  int k_neighbors = 15;

  absl::Status Validate() const;
};

// Pearson correlation between item columns over their co-rating users.
// Item means and the two norms in the denominator run over each item's full
// set of raters. Pairs with fewer than two co-raters, or a column with zero
// spread, get 0.
ItemSimilarityMatrix ItemPearson(const RatingMatrix& noisy);

// The k items with largest |s_jk| (j itself and zero similarities excluded),
// ordered by |s_jk| descending then item index ascending.
std::vector<int> TopKNeighbors(const ItemSimilarityMatrix& similarity, int item,
                               int k);

// Stage 2 of the pipeline. Each observed (i, j) is blended as
//   beta * r_ij + (1 - beta) * sum_k |s_jk| r_ik / sum_k |s_jk|
// over k in TopKNeighbors(j) rated by user i, then clipped; cells with no
// such neighbour are left unchanged. All predictions read the input matrix.
absl::StatusOr<RatingMatrix> Stage2Denoise(const RatingMatrix& noisy,
                                           const DenoiseParams& params);

}  // namespace dpsr

#endif  // DPSR_CF_DENOISE_H_
