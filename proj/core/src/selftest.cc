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

#include "dpsr/selftest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "absl/strings/str_format.h"
#include "dpsr/cf_denoise.h"
#include "dpsr/dp_mechanisms.h"
#include "dpsr/eval.h"
#include "dpsr/lowrank_complete.h"
#include "dpsr/random.h"
#include "dpsr/ratings.h"
#include "dpsr/stats.h"

namespace dpsr {
namespace {

// Returns an empty string on success, otherwise a description.
using Property = std::function<std::string(Rng&)>;

RatingMatrix RandomRatings(Rng& rng, int m, int n, double density) {
  Eigen::MatrixXd values(m, n);
  std::vector<Cell> cells;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      values(i, j) = 1.0 + 4.0 * rng.Uniform();
      if (rng.Uniform() < density) cells.push_back({i, j});
    }
  }
  if (cells.empty()) cells.push_back({0, 0});
  return *RatingMatrix::Create(std::move(values),
                               *ObservationMask::Create(m, n, std::move(cells)));
}

std::string ClipIdempotent(Rng& rng) {
  const double lo = 10.0 * rng.Uniform() - 5.0;
  const double hi = lo + 5.0 * rng.Uniform();
  const double x = 20.0 * rng.Uniform() - 10.0;
  const double once = *Clip(x, lo, hi);
  if (*Clip(once, lo, hi) != once) {
    return absl::StrFormat("clip(%g, %g, %g) not idempotent", x, lo, hi);
  }
  return "";
}

std::string SplitPartitions(Rng& rng) {
  const int m = 2 + static_cast<int>(rng.UniformIndex(20));
  const int n = 2 + static_cast<int>(rng.UniformIndex(20));
  const RatingMatrix r = RandomRatings(rng, m, n, 0.5);
  if (r.mask().size() < 2) return "";
  absl::StatusOr<TrainTestSplit> split =
      SplitTrainTest(r.mask(), 0.2 + 0.5 * rng.Uniform(), rng.NextU64());
  if (!split.ok()) return "";  // degenerate fraction on a tiny mask
  std::set<Cell> seen;
  for (const Cell& c : split->train.cells()) seen.insert(c);
  for (const Cell& c : split->test.cells()) {
    if (!seen.insert(c).second) return "train and test overlap";
  }
  std::set<Cell> original(r.mask().cells().begin(), r.mask().cells().end());
  if (seen != original) return "train and test do not cover the mask";
  return "";
}

std::string MechanismsPreserveRange(Rng& rng) {
  const RatingMatrix r = RandomRatings(rng, 6, 5, 0.6);
  const double eps = 0.05 + 5.0 * rng.Uniform();
  std::vector<RatingMatrix> outputs = {
      *CalibratedNoiseStage1(r, eps, {rng.Uniform()}, rng),
      *LaplaceMechanism(r, eps, rng),
      *GaussianMechanism(r, eps, 1e-5, rng)};
  for (const RatingMatrix& out : outputs) {
    if (!(out.mask() == r.mask())) return "mechanism changed the mask";
    for (const Cell& c : out.mask().cells()) {
      const double v = out(c.user, c.item);
      if (v < r.r_min() || v > r.r_max()) return "value outside rating range";
    }
  }
  return "";
}

std::string PearsonSymmetricBounded(Rng& rng) {
  const ItemSimilarityMatrix s = ItemPearson(RandomRatings(rng, 10, 8, 0.7));
  for (int j = 0; j < s.size(); ++j) {
    if (s(j, j) != 0.0) return "non-zero diagonal";
    for (int k = 0; k < s.size(); ++k) {
      if (s(j, k) != s(k, j)) return "asymmetric similarity";
      if (std::abs(s(j, k)) > 1.0) return "similarity outside [-1, 1]";
    }
  }
  return "";
}

std::string Stage2BetaOneIdentity(Rng& rng) {
  const RatingMatrix r = RandomRatings(rng, 10, 8, 0.6);
  const RatingMatrix out = *Stage2Denoise(r, {1.0, 3});
  for (const Cell& c : r.mask().cells()) {
    if (out(c.user, c.item) != r(c.user, c.item)) return "beta=1 changed a cell";
  }
  return "";
}

std::string SvdOrthonormal(Rng& rng) {
  const int m = 3 + static_cast<int>(rng.UniformIndex(8));
  const int n = 3 + static_cast<int>(rng.UniformIndex(8));
  Eigen::MatrixXd a(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.StandardNormal();
  }
  const int d = 1 + static_cast<int>(rng.UniformIndex(std::min(m, n)));
  const SvdFactors f = *TruncatedSvd(a, d);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  if ((f.u_left.transpose() * f.u_left - eye).norm() > 1e-8) return "U not orthonormal";
  if ((f.v_right.transpose() * f.v_right - eye).norm() > 1e-8) return "V not orthonormal";
  for (int k = 0; k + 1 < d; ++k) {
    if (f.sigma(k) < f.sigma(k + 1)) return "singular values not sorted";
  }
  return "";
}

std::string RmseDominatesMae(Rng& rng) {
  const size_t len = 1 + rng.UniformIndex(30);
  std::vector<double> a(len), b(len);
  for (size_t i = 0; i < len; ++i) {
    a[i] = 5.0 * rng.StandardNormal();
    b[i] = 5.0 * rng.StandardNormal();
  }
  if (*Rmse(a, b) + 1e-12 < *Mae(a, b)) return "rmse < mae";
  return "";
}

std::string RankingMetricsBounded(Rng& rng) {
  std::vector<UserTestItems> users(1 + rng.UniformIndex(5));
  for (UserTestItems& u : users) {
    const size_t count = rng.UniformIndex(15);
    for (size_t j = 0; j < count; ++j) {
      u.push_back({static_cast<int>(j), 1.0 + 4.0 * rng.Uniform(),
                   1.0 + 4.0 * rng.Uniform()});
    }
  }
  absl::StatusOr<double> p = PrecisionAtK(users, 10);
  absl::StatusOr<double> g = NdcgAtK(users, 10);
  if (!p.ok() || !g.ok()) return "";  // every user empty
  if (*p < 0.0 || *p > 1.0) return "precision outside [0, 1]";
  if (*g < 0.0 || *g > 1.0 + 1e-12) return "ndcg outside [0, 1]";
  return "";
}

std::string TTestAntisymmetric(Rng& rng) {
  const size_t len = 2 + rng.UniformIndex(10);
  std::vector<double> a(len), b(len);
  for (size_t i = 0; i < len; ++i) {
    a[i] = rng.StandardNormal();
    b[i] = rng.StandardNormal();
  }
  const TTestResult ab = *PairedTTest(a, b);
  const TTestResult ba = *PairedTTest(b, a);
  if (ab.t_stat != -ba.t_stat || ab.p_value != ba.p_value) {
    return "swapping samples did not negate t";
  }
  if (ab.p_value < 0.0 || ab.p_value > 1.0) return "p outside [0, 1]";
  return "";
}

}  // namespace

std::vector<PropertyOutcome> RunPropertySuites(uint64_t seed, int instances) {
  const std::vector<std::pair<std::string, Property>> suites = {
      {"clip_idempotent", ClipIdempotent},
      {"split_partitions_mask", SplitPartitions},
      {"mechanisms_preserve_mask_and_range", MechanismsPreserveRange},
      {"pearson_symmetric_bounded", PearsonSymmetricBounded},
      {"stage2_beta_one_identity", Stage2BetaOneIdentity},
      {"svd_orthonormal_sorted", SvdOrthonormal},
      {"rmse_dominates_mae", RmseDominatesMae},
      {"ranking_metrics_in_unit_interval", RankingMetricsBounded},
      {"t_test_antisymmetric", TTestAntisymmetric},
  };
  std::vector<PropertyOutcome> outcomes;
  for (size_t s = 0; s < suites.size(); ++s) {
    Rng rng(Mix64(seed ^ HashString(suites[s].first)));
    PropertyOutcome out{suites[s].first, true, 0, ""};
    for (int i = 0; i < instances; ++i) {
      ++out.instances;
      std::string failure = suites[s].second(rng);
      if (!failure.empty()) {
        out.passed = false;
        out.detail = absl::StrFormat("instance %d: %s", i, failure);
        break;
      }
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

}  // namespace dpsr
