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

#include "dpsr/ratings.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_format.h"
#include "dpsr/random.h"

namespace dpsr {

ObservationMask::ObservationMask(int m, int n, std::vector<Cell> sorted_cells)
    : m_(m),
      n_(n),
      cells_(std::move(sorted_cells)),
      row_offsets_(static_cast<size_t>(m) + 1, 0),
      member_(static_cast<size_t>(m) * n, 0) {
  for (const Cell& c : cells_) {
    ++row_offsets_[c.user + 1];
    member_[static_cast<size_t>(c.user) * n_ + c.item] = 1;
  }
  std::partial_sum(row_offsets_.begin(), row_offsets_.end(),
                   row_offsets_.begin());
}

absl::StatusOr<ObservationMask> ObservationMask::Create(
    int m, int n, std::vector<Cell> cells) {
  if (m <= 0 || n <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mask dimensions must be positive, got %dx%d", m, n));
  }
  for (const Cell& c : cells) {
    if (c.user < 0 || c.user >= m || c.item < 0 || c.item >= n) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "cell (%d, %d) outside %dx%d mask", c.user, c.item, m, n));
    }
  }
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) {
    return absl::InvalidArgumentError("duplicate cell in observation mask");
  }
  return ObservationMask(m, n, std::move(cells));
}

ObservationMask ObservationMask::Full(int m, int n) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) cells.push_back({i, j});
  }
  return ObservationMask(m, n, std::move(cells));
}

std::span<const Cell> ObservationMask::RowCells(int user) const {
  return std::span<const Cell>(cells_).subspan(
      row_offsets_[user], row_offsets_[user + 1] - row_offsets_[user]);
}

absl::StatusOr<RatingMatrix> RatingMatrix::Create(Eigen::MatrixXd values,
                                                  ObservationMask mask,
                                                  double r_min, double r_max) {
  if (!(r_min < r_max)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("rating bounds [%g, %g] are empty", r_min, r_max));
  }
  if (values.rows() != mask.rows() || values.cols() != mask.cols()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "values are %dx%d but mask is %dx%d", values.rows(), values.cols(),
        mask.rows(), mask.cols()));
  }
  for (const Cell& c : mask.cells()) {
    const double v = values(c.user, c.item);
    if (!(v >= r_min && v <= r_max)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "observed value %g at (%d, %d) outside [%g, %g]", v, c.user, c.item,
          r_min, r_max));
    }
  }
  return RatingMatrix(std::move(values), std::move(mask), r_min, r_max);
}

absl::StatusOr<RatingMatrix> RatingMatrix::WithValues(
    Eigen::MatrixXd values) const {
  return Create(std::move(values), mask_, r_min_, r_max_);
}

absl::StatusOr<RatingMatrix> RatingMatrix::Restrict(
    const ObservationMask& mask) const {
  if (mask.rows() != rows() || mask.cols() != cols()) {
    return absl::InvalidArgumentError("restriction mask has wrong dimensions");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows(), cols());
  for (const Cell& c : mask.cells()) {
    if (!mask_.Contains(c.user, c.item)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "cell (%d, %d) is not observed in the source", c.user, c.item));
    }
    out(c.user, c.item) = values_(c.user, c.item);
  }
  return Create(std::move(out), mask, r_min_, r_max_);
}

std::vector<double> RatingMatrix::ObservedValues() const {
  std::vector<double> out;
  out.reserve(mask_.size());
  for (const Cell& c : mask_.cells()) out.push_back(values_(c.user, c.item));
  return out;
}

absl::Status ValidateSynthConfig(const SynthConfig& cfg) {
  if (cfg.m <= 0 || cfg.n <= 0 || cfg.d_true <= 0) {
    return absl::InvalidArgumentError(
        "synthetic m, n and d_true must be positive");
  }
  if (!(cfg.density > 0.0 && cfg.density <= 1.0)) {
    return absl::InvalidArgumentError("synthetic density must be in (0, 1]");
  }
  if (!(cfg.noise_std >= 0.0)) {
    return absl::InvalidArgumentError("synthetic noise_std must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<double> Clip(double x, double lo, double hi) {
  if (lo > hi) {
    return absl::InvalidArgumentError(
        absl::StrFormat("clip bounds inverted: lo=%g > hi=%g", lo, hi));
  }
  return std::min(std::max(x, lo), hi);
}

absl::StatusOr<double> GlobalMean(const RatingMatrix& ratings) {
  if (ratings.mask().empty()) {
    return absl::FailedPreconditionError("global mean of an empty mask");
  }
  double sum = 0.0;
  for (const Cell& c : ratings.mask().cells()) sum += ratings(c.user, c.item);
  return sum / static_cast<double>(ratings.mask().size());
}

namespace {

Eigen::MatrixXd DrawNormalMatrix(Rng& rng, int rows, int cols, double sd) {
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = sd * rng.StandardNormal();
  }
  return out;
}

Eigen::MatrixXd LatentFromStream(const SynthConfig& cfg, Rng& rng) {
  const Eigen::MatrixXd u = DrawNormalMatrix(rng, cfg.m, cfg.d_true, 1.0);
  const Eigen::MatrixXd v = DrawNormalMatrix(rng, cfg.n, cfg.d_true, 1.0);
  Eigen::MatrixXd r = u * v.transpose();
  if (cfg.noise_std > 0.0) r += DrawNormalMatrix(rng, cfg.m, cfg.n, cfg.noise_std);
  return r;
}

}  // namespace

absl::StatusOr<Eigen::MatrixXd> GenerateLatentMatrix(const SynthConfig& cfg) {
  if (absl::Status s = ValidateSynthConfig(cfg); !s.ok()) return s;
  Rng rng(cfg.seed);
  return LatentFromStream(cfg, rng);
}

absl::StatusOr<RatingMatrix> GenerateSynthetic(const SynthConfig& cfg) {
  if (absl::Status s = ValidateSynthConfig(cfg); !s.ok()) return s;
  Rng rng(cfg.seed);
  Eigen::MatrixXd r = LatentFromStream(cfg, rng);

  constexpr double kLo = 1.0;
  constexpr double kHi = 5.0;
  const double lo = r.minCoeff();
  const double span = r.maxCoeff() - lo;
  if (span > 0.0) {
    r = ((r.array() - lo) / span * (kHi - kLo) + kLo).matrix();
  } else {
    r.setConstant(0.5 * (kLo + kHi));
  }

  std::vector<Cell> cells;
  while (cells.empty()) {
    for (int i = 0; i < cfg.m; ++i) {
      for (int j = 0; j < cfg.n; ++j) {
        if (rng.Uniform() < cfg.density) cells.push_back({i, j});
      }
    }
  }
  absl::StatusOr<ObservationMask> mask =
      ObservationMask::Create(cfg.m, cfg.n, std::move(cells));
  if (!mask.ok()) return mask.status();
  return RatingMatrix::Create(std::move(r), *std::move(mask), kLo, kHi);
}

absl::StatusOr<TrainTestSplit> SplitTrainTest(const ObservationMask& mask,
                                              double test_fraction,
                                              uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    return absl::InvalidArgumentError("test_fraction must be in (0, 1)");
  }
  if (mask.empty()) {
    return absl::FailedPreconditionError("cannot split an empty mask");
  }
  const size_t total = mask.size();
  const auto n_test = static_cast<size_t>(
      std::llround(test_fraction * static_cast<double>(total)));
  if (n_test == 0 || n_test == total) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "test_fraction %g of %d cells leaves an empty partition",
        test_fraction, total));
  }

  // Fisher-Yates written out: std::shuffle's permutation is unspecified.
  std::vector<Cell> cells(mask.cells().begin(), mask.cells().end());
  Rng rng(seed);
  for (size_t i = total - 1; i > 0; --i) {
    std::swap(cells[i], cells[rng.UniformIndex(i + 1)]);
  }
  std::vector<Cell> test(cells.begin(), cells.begin() + n_test);
  std::vector<Cell> train(cells.begin() + n_test, cells.end());

  absl::StatusOr<ObservationMask> train_mask =
      ObservationMask::Create(mask.rows(), mask.cols(), std::move(train));
  if (!train_mask.ok()) return train_mask.status();
  absl::StatusOr<ObservationMask> test_mask =
      ObservationMask::Create(mask.rows(), mask.cols(), std::move(test));
  if (!test_mask.ok()) return test_mask.status();
  return TrainTestSplit{*std::move(train_mask), *std::move(test_mask)};
}

}  // namespace dpsr
