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

#ifndef DPSR_RATINGS_H_
#define DPSR_RATINGS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpsr {

struct Cell {
  int user = 0;
  int item = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Set of observed (user, item) pairs of an m x n matrix. Cells are kept in
// row-major order alongside a dense membership bitmap.
//
// An empty mask is representable; operations that need data reject it.
class ObservationMask {
 public:
  ObservationMask() = default;

  // Fails on out-of-range or duplicate cells. Input order is irrelevant.
  static absl::StatusOr<ObservationMask> Create(int m, int n,
                                                std::vector<Cell> cells);
  static ObservationMask Full(int m, int n);

  int rows() const { return m_; }
  int cols() const { return n_; }
  size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  std::span<const Cell> cells() const { return cells_; }

  bool Contains(int user, int item) const {
    return member_[static_cast<size_t>(user) * n_ + item] != 0;
  }

  // Items observed for `user`, ascending.
  std::span<const Cell> RowCells(int user) const;

  friend bool operator==(const ObservationMask& a, const ObservationMask& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.cells_ == b.cells_;
  }

 private:
  ObservationMask(int m, int n, std::vector<Cell> sorted_cells);

  int m_ = 0;
  int n_ = 0;
  std::vector<Cell> cells_;
  std::vector<size_t> row_offsets_;
  std::vector<uint8_t> member_;
};

// Dense m x n rating values with an observation mask and rating bounds.
// Only observed cells carry data. Values at unobserved cells are storage and
// must not be read as ratings, except where a stage documents that it
// produced a dense result.
class RatingMatrix {
 public:
  // Fails unless r_min < r_max, dimensions agree with the mask and every
  // observed value lies in [r_min, r_max].
  static absl::StatusOr<RatingMatrix> Create(Eigen::MatrixXd values,
                                             ObservationMask mask,
                                             double r_min = 1.0,
                                             double r_max = 5.0);

  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }
  const Eigen::MatrixXd& values() const { return values_; }
  const ObservationMask& mask() const { return mask_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  double sensitivity() const { return r_max_ - r_min_; }

  double operator()(int user, int item) const { return values_(user, item); }

  // Same bounds, new values and mask; validated like Create.
  absl::StatusOr<RatingMatrix> WithValues(Eigen::MatrixXd values) const;

  // Keeps only the cells of `mask` (which must be a subset of this mask);
  // every other cell is zeroed so nothing outside `mask` leaks downstream.
  absl::StatusOr<RatingMatrix> Restrict(const ObservationMask& mask) const;

  // Observed values in mask order.
  std::vector<double> ObservedValues() const;

 private:
  RatingMatrix(Eigen::MatrixXd values, ObservationMask mask, double r_min,
               double r_max)
      : values_(std::move(values)),
        mask_(std::move(mask)),
        r_min_(r_min),
        r_max_(r_max) {}

  Eigen::MatrixXd values_;
  ObservationMask mask_;
  double r_min_;
  double r_max_;
};

struct SynthConfig {
  int m = 300;
  int n = 200;
  int d_true = 8;
  double noise_std = 0.1;
  double density = 0.1;
  uint64_t seed = 0;
};

struct TrainTestSplit {
  ObservationMask train;
  ObservationMask test;
};

absl::Status ValidateSynthConfig(const SynthConfig& cfg);

absl::StatusOr<double> Clip(double x, double lo, double hi);

// Unchecked clip for inner loops; requires lo <= hi.
inline double ClipToRange(double x, double lo, double hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

absl::StatusOr<double> GlobalMean(const RatingMatrix& ratings);

// U V^T + E before rescaling: U (m x d_true), V (n x d_true) standard normal,
// E normal with sd noise_std. Draw order is U row-major, V row-major, E
// row-major, all from one Rng seeded with cfg.seed.
absl::StatusOr<Eigen::MatrixXd> GenerateLatentMatrix(const SynthConfig& cfg);

// Latent matrix rescaled affinely so min -> 1 and max -> 5, with a Bernoulli
// (density) mask drawn from the same stream after the latent matrix. Every
// cell holds a ground-truth value.
absl::StatusOr<RatingMatrix> GenerateSynthetic(const SynthConfig& cfg);

// Uniform partition of `mask`; |test| = round(test_fraction * |mask|).
absl::StatusOr<TrainTestSplit> SplitTrainTest(const ObservationMask& mask,
                                              double test_fraction,
                                              uint64_t seed);

}  // namespace dpsr

#endif  // DPSR_RATINGS_H_
