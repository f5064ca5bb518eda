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

#include "dpsr/eval.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"

namespace dpsr {
namespace {

Eigen::MatrixXd DrawInit(Rng& rng, int rows, int cols, double sd) {
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = sd * rng.StandardNormal();
  }
  return out;
}

struct AdamState {
  Eigen::MatrixXd first;
  Eigen::MatrixXd second;

  AdamState(Eigen::Index rows, Eigen::Index cols)
      : first(Eigen::MatrixXd::Zero(rows, cols)),
        second(Eigen::MatrixXd::Zero(rows, cols)) {}

  void Step(Eigen::MatrixXd& param, const Eigen::MatrixXd& grad,
            const MfConfig& cfg, int step) {
    first = cfg.adam_beta1 * first + (1.0 - cfg.adam_beta1) * grad;
    second = cfg.adam_beta2 * second +
             (1.0 - cfg.adam_beta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(cfg.adam_beta1, step);
    const double c2 = 1.0 - std::pow(cfg.adam_beta2, step);
    param.array() -= cfg.learn_rate * (first.array() / c1) /
                     ((second.array() / c2).sqrt() + cfg.adam_eps);
  }
};

absl::Status CheckPaired(std::span<const double> pred,
                         std::span<const double> truth) {
  if (pred.empty() || pred.size() != truth.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "metric inputs must be non-empty and equal length (%d vs %d)",
        pred.size(), truth.size()));
  }
  return absl::OkStatus();
}

// Ranking order for one user.
std::vector<ScoredItem> Ranked(const UserTestItems& items) {
  std::vector<ScoredItem> out(items.begin(), items.end());
  std::sort(out.begin(), out.end(), [](const ScoredItem& a, const ScoredItem& b) {
    return a.predicted != b.predicted ? a.predicted > b.predicted : a.item < b.item;
  });
  return out;
}

absl::Status CheckRankingArgs(std::span<const UserTestItems> users, int k) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  for (const UserTestItems& u : users) {
    if (!u.empty()) return absl::OkStatus();
  }
  return absl::FailedPreconditionError("no user has test items");
}

}  // namespace

absl::Status MfConfig::Validate() const {
  if (latent_d < 1) return absl::InvalidArgumentError("latent_d must be >= 1");
  if (epochs < 0) return absl::InvalidArgumentError("epochs must be >= 0");
  if (!(learn_rate > 0.0)) {
    return absl::InvalidArgumentError("learn_rate must be positive");
  }
  if (!(init_std > 0.0)) {
    return absl::InvalidArgumentError("init_std must be positive");
  }
  if (!(reg_weight >= 0.0)) {
    return absl::InvalidArgumentError("reg_weight must be non-negative");
  }
  return absl::OkStatus();
}

double MfLoss(const MfModel& model, const RatingMatrix& train,
              double reg_weight) {
  const double count = static_cast<double>(train.mask().size());
  double sse = 0.0;
  for (const Cell& c : train.mask().cells()) {
    const double err = train(c.user, c.item) -
                       model.p_user.row(c.user).dot(model.q_item.row(c.item));
    sse += err * err;
  }
  return sse / count +
         reg_weight * (model.p_user.squaredNorm() + model.q_item.squaredNorm()) /
             count;
}

MfGradient MfLossGradient(const MfModel& model, const RatingMatrix& train,
                          double reg_weight) {
  const double count = static_cast<double>(train.mask().size());
  MfGradient g{(2.0 * reg_weight / count) * model.p_user,
               (2.0 * reg_weight / count) * model.q_item};
  for (const Cell& c : train.mask().cells()) {
    const double resid =
        model.p_user.row(c.user).dot(model.q_item.row(c.item)) -
        train(c.user, c.item);
    const double scale = 2.0 * resid / count;
    g.p_user.row(c.user) += scale * model.q_item.row(c.item);
    g.q_item.row(c.item) += scale * model.p_user.row(c.user);
  }
  return g;
}

absl::StatusOr<MfModel> TrainMf(const RatingMatrix& train, const MfConfig& cfg,
                                Rng& rng, std::vector<double>* loss_trace) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  if (train.mask().empty()) {
    return absl::FailedPreconditionError("cannot train on an empty mask");
  }
  MfModel model;
  model.p_user = DrawInit(rng, train.rows(), cfg.latent_d, cfg.init_std);
  model.q_item = DrawInit(rng, train.cols(), cfg.latent_d, cfg.init_std);
  model.r_min = train.r_min();
  model.r_max = train.r_max();

  AdamState p_state(model.p_user.rows(), model.p_user.cols());
  AdamState q_state(model.q_item.rows(), model.q_item.cols());
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (loss_trace) loss_trace->push_back(MfLoss(model, train, cfg.reg_weight));
    const MfGradient g = MfLossGradient(model, train, cfg.reg_weight);
    p_state.Step(model.p_user, g.p_user, cfg, epoch);
    q_state.Step(model.q_item, g.q_item, cfg, epoch);
  }
  if (loss_trace) loss_trace->push_back(MfLoss(model, train, cfg.reg_weight));
  return model;
}

absl::StatusOr<double> Predict(const MfModel& model, int user, int item) {
  if (user < 0 || user >= model.p_user.rows() || item < 0 ||
      item >= model.q_item.rows()) {
    return absl::OutOfRangeError(
        absl::StrFormat("prediction index (%d, %d) out of range", user, item));
  }
  return ClipToRange(model.p_user.row(user).dot(model.q_item.row(item)),
                     model.r_min, model.r_max);
}

absl::StatusOr<double> Rmse(std::span<const double> pred,
                            std::span<const double> truth) {
  if (absl::Status s = CheckPaired(pred, truth); !s.ok()) return s;
  double sse = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    sse += (pred[i] - truth[i]) * (pred[i] - truth[i]);
  }
  return std::sqrt(sse / static_cast<double>(pred.size()));
}

absl::StatusOr<double> Mae(std::span<const double> pred,
                           std::span<const double> truth) {
  if (absl::Status s = CheckPaired(pred, truth); !s.ok()) return s;
  double sae = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) sae += std::abs(pred[i] - truth[i]);
  return sae / static_cast<double>(pred.size());
}

absl::StatusOr<double> PrecisionAtK(std::span<const UserTestItems> users,
                                    int k, double threshold) {
  if (absl::Status s = CheckRankingArgs(users, k); !s.ok()) return s;
  double total = 0.0;
  int counted = 0;
  for (const UserTestItems& u : users) {
    if (u.empty()) continue;
    const std::vector<ScoredItem> ranked = Ranked(u);
    const size_t top = std::min(ranked.size(), static_cast<size_t>(k));
    int hits = 0;
    for (size_t r = 0; r < top; ++r) hits += ranked[r].truth >= threshold;
    total += static_cast<double>(hits) / k;
    ++counted;
  }
  return total / counted;
}

absl::StatusOr<double> NdcgAtK(std::span<const UserTestItems> users, int k,
                               double threshold) {
  if (absl::Status s = CheckRankingArgs(users, k); !s.ok()) return s;
  double total = 0.0;
  int counted = 0;
  for (const UserTestItems& u : users) {
    if (u.empty()) continue;
    const std::vector<ScoredItem> ranked = Ranked(u);
    const size_t top = std::min(ranked.size(), static_cast<size_t>(k));
    size_t relevant = 0;
    double dcg = 0.0;
    for (size_t r = 0; r < ranked.size(); ++r) {
      if (ranked[r].truth < threshold) continue;
      ++relevant;
      if (r < top) dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    }
    double idcg = 0.0;
    for (size_t r = 0; r < std::min(relevant, top); ++r) {
      idcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    }
    total += idcg > 0.0 ? dcg / idcg : 0.0;
    ++counted;
  }
  return total / counted;
}

std::vector<UserTestItems> GroupTestItems(
    const ObservationMask& test, const Eigen::MatrixXd& truth,
    const std::function<double(int, int)>& predict) {
  std::vector<UserTestItems> users(test.rows());
  for (const Cell& c : test.cells()) {
    users[c.user].push_back({c.item, predict(c.user, c.item), truth(c.user, c.item)});
  }
  return users;
}

absl::StatusOr<MetricReport> EvaluatePredictions(
    const ObservationMask& test, const Eigen::MatrixXd& truth,
    const std::function<double(int, int)>& predict) {
  const std::vector<UserTestItems> users = GroupTestItems(test, truth, predict);
  std::vector<double> pred;
  std::vector<double> actual;
  pred.reserve(test.size());
  actual.reserve(test.size());
  for (const UserTestItems& u : users) {
    for (const ScoredItem& s : u) {
      pred.push_back(s.predicted);
      actual.push_back(s.truth);
    }
  }
  MetricReport report;
  absl::StatusOr<double> v = Rmse(pred, actual);
  if (!v.ok()) return v.status();
  report.rmse = *v;
  v = Mae(pred, actual);
  if (!v.ok()) return v.status();
  report.mae = *v;
  v = PrecisionAtK(users, 10);
  if (!v.ok()) return v.status();
  report.precision_at_10 = *v;
  v = NdcgAtK(users, 10);
  if (!v.ok()) return v.status();
  report.ndcg_at_10 = *v;
  return report;
}

}  // namespace dpsr
