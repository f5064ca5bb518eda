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

#ifndef DPSR_TESTS_TEST_UTIL_H_
#define DPSR_TESTS_TEST_UTIL_H_

#include <cmath>
#include <initializer_list>
#include <vector>

#include "Eigen/Dense"
#include "dpsr/random.h"
#include "dpsr/ratings.h"
#include "gtest/gtest.h"

namespace dpsr::testing {

// Rows of values; NAN marks an unobserved cell.
inline RatingMatrix MakeRatings(
    std::initializer_list<std::initializer_list<double>> rows,
    double r_min = 1.0, double r_max = 5.0) {
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.begin()->size());
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(m, n);
  std::vector<Cell> cells;
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) {
      if (!std::isnan(v)) {
        values(i, j) = v;
        cells.push_back({i, j});
      }
      ++j;
    }
    ++i;
  }
  auto mask = ObservationMask::Create(m, n, std::move(cells));
  EXPECT_TRUE(mask.ok()) << mask.status();
  auto r = RatingMatrix::Create(std::move(values), *std::move(mask), r_min, r_max);
  EXPECT_TRUE(r.ok()) << r.status();
  return *std::move(r);
}

// Uniform ratings in [1, 5] with each cell observed with prob `density`.
inline RatingMatrix RandomRatings(Rng& rng, int m, int n, double density) {
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(m, n);
  std::vector<Cell> cells;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (rng.Uniform() < density) {
        values(i, j) = 1.0 + 4.0 * rng.Uniform();
        cells.push_back({i, j});
      }
    }
  }
  if (cells.empty()) {
    values(0, 0) = 3.0;
    cells.push_back({0, 0});
  }
  return *RatingMatrix::Create(std::move(values),
                               *ObservationMask::Create(m, n, std::move(cells)));
}

inline Eigen::MatrixXd RandomNormalMatrix(Rng& rng, int m, int n) {
  Eigen::MatrixXd a(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.StandardNormal();
  }
  return a;
}

}  // namespace dpsr::testing

#endif  // DPSR_TESTS_TEST_UTIL_H_
