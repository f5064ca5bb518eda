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

#include "dpsr/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <utility>

#include "absl/strings/str_format.h"
#include "dpsr/stats.h"

namespace dpsr {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool SameMetric(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

// Privatised (and for DPSR, reconstructed) train matrix for one cell.
absl::StatusOr<RatingMatrix> ReleaseTrain(const ExperimentConfig& cfg,
                                          const RatingMatrix& train,
                                          Method method, double epsilon,
                                          Rng& rng) {
  switch (method) {
    case Method::kDpsr:
      return RunDpsrPipeline(train, epsilon, cfg.dpsr_params, rng);
    case Method::kLaplace:
      return LaplaceMechanism(train, epsilon, rng);
    case Method::kGaussian:
      return GaussianMechanism(train, epsilon, cfg.delta, rng);
    case Method::kNoPrivacy:
      return train;
  }
  return absl::InternalError("unknown method");
}

}  // namespace

absl::Status DpsrParams::Validate(int m, int n) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError("alpha must be in [0, 1]");
  }
  if (absl::Status s = denoise().Validate(); !s.ok()) return s;
  return low_rank().Validate(m, n);
}

absl::string_view MethodName(Method method) {
  switch (method) {
    case Method::kDpsr:
      return "dpsr";
    case Method::kGaussian:
      return "gaussian";
    case Method::kLaplace:
      return "laplace";
    case Method::kNoPrivacy:
      return "no_privacy";
  }
  return "unknown";
}

absl::StatusOr<Method> ParseMethod(absl::string_view name) {
  for (Method m : {Method::kDpsr, Method::kGaussian, Method::kLaplace,
                   Method::kNoPrivacy}) {
    if (MethodName(m) == name) return m;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown method '%s'", name));
}

absl::Status ExperimentConfig::Validate() const {
  if (absl::Status s = ValidateSynthConfig(synth); !s.ok()) return s;
  if (epsilons.empty() || seeds.empty() || methods.empty()) {
    return absl::InvalidArgumentError(
        "epsilons, seeds and methods must all be non-empty");
  }
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("epsilon %g is not positive", eps));
    }
  }
  if (absl::Status s = dpsr_params.Validate(synth.m, synth.n); !s.ok()) {
    return s;
  }
  if (absl::Status s = mf.Validate(); !s.ok()) return s;
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must be in (0, 1)");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    return absl::InvalidArgumentError("test_fraction must be in (0, 1)");
  }
  if (threads < 1) return absl::InvalidArgumentError("threads must be >= 1");
  return absl::OkStatus();
}

bool operator==(const ExperimentResult& a, const ExperimentResult& b) {
  return a.method == b.method && a.epsilon == b.epsilon && a.seed == b.seed &&
         SameMetric(a.metrics.rmse, b.metrics.rmse) &&
         SameMetric(a.metrics.mae, b.metrics.mae) &&
         SameMetric(a.metrics.precision_at_10, b.metrics.precision_at_10) &&
         SameMetric(a.metrics.ndcg_at_10, b.metrics.ndcg_at_10) &&
         a.wall_time_seconds == b.wall_time_seconds && a.ok() == b.ok();
}

bool ResultLess(const ExperimentResult& a, const ExperimentResult& b) {
  const absl::string_view na = MethodName(a.method);
  const absl::string_view nb = MethodName(b.method);
  if (na != nb) return na < nb;
  if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
  return a.seed < b.seed;
}

double QuantizeMetric(double x) {
  if (!std::isfinite(x)) return x;
  return std::round(x * 1e6) / 1e6;
}

absl::StatusOr<RatingMatrix> RunDpsrPipeline(const RatingMatrix& train,
                                             double epsilon,
                                             const DpsrParams& params,
                                             Rng& rng) {
  if (absl::Status s = params.Validate(train.rows(), train.cols()); !s.ok()) {
    return s;
  }
  absl::StatusOr<RatingMatrix> stage1 =
      CalibratedNoiseStage1(train, epsilon, params.calibration(), rng);
  if (!stage1.ok()) return stage1.status();
  absl::StatusOr<RatingMatrix> stage2 = Stage2Denoise(*stage1, params.denoise());
  if (!stage2.ok()) return stage2.status();
  return Stage3Complete(*stage2, params.low_rank());
}

absl::StatusOr<SeedData> PrepareSeed(const ExperimentConfig& cfg,
                                     uint64_t seed) {
  SynthConfig synth = cfg.synth;
  synth.seed = seed;
  absl::StatusOr<RatingMatrix> full = GenerateSynthetic(synth);
  if (!full.ok()) return full.status();
  absl::StatusOr<TrainTestSplit> split = SplitTrainTest(
      full->mask(), cfg.test_fraction, DeriveSeed(seed, "", 0.0, "split"));
  if (!split.ok()) return split.status();
  absl::StatusOr<RatingMatrix> train = full->Restrict(split->train);
  if (!train.ok()) return train.status();
  return SeedData{*std::move(full), *std::move(split), *std::move(train)};
}

ExperimentResult RunCell(const ExperimentConfig& cfg, const SeedData& data,
                         uint64_t seed, Method method,
                         std::optional<double> epsilon) {
  ExperimentResult result;
  result.method = method;
  result.epsilon = method == Method::kNoPrivacy ? std::nullopt : epsilon;
  result.seed = seed;
  result.metrics = {kNan, kNan, kNan, kNan};

  const auto start = std::chrono::steady_clock::now();
  const double eps = result.epsilon.value_or(0.0);
  const absl::string_view name = MethodName(method);

  auto run = [&]() -> absl::Status {
    if (!result.epsilon.has_value() && method != Method::kNoPrivacy) {
      return absl::InvalidArgumentError("private method needs an epsilon");
    }
    Rng noise_rng(DeriveSeed(seed, name, eps, "noise"));
    absl::StatusOr<RatingMatrix> released =
        ReleaseTrain(cfg, data.train, method, eps, noise_rng);
    if (!released.ok()) return released.status();

    absl::StatusOr<MetricReport> report;
    if (method == Method::kDpsr && cfg.dpsr_eval == DpsrEvalMode::kDirect) {
      const Eigen::MatrixXd& dense = released->values();
      report = EvaluatePredictions(data.split.test, data.full.values(),
                                   [&](int i, int j) { return dense(i, j); });
    } else {
      Rng mf_rng(DeriveSeed(seed, "", 0.0, "mf"));
      absl::StatusOr<MfModel> model = TrainMf(*released, cfg.mf, mf_rng);
      if (!model.ok()) return model.status();
      report = EvaluatePredictions(
          data.split.test, data.full.values(),
          [&](int i, int j) { return *Predict(*model, i, j); });
    }
    if (!report.ok()) return report.status();
    result.metrics = {QuantizeMetric(report->rmse), QuantizeMetric(report->mae),
                      QuantizeMetric(report->precision_at_10),
                      QuantizeMetric(report->ndcg_at_10)};
    return absl::OkStatus();
  };

  if (absl::Status s = run(); !s.ok()) {
    result.error = std::string(s.message());
    if (result.error.empty()) result.error = "cell failed";
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  result.wall_time_seconds = cfg.record_wall_time ? QuantizeMetric(elapsed) : 0.0;
  return result;
}

absl::StatusOr<std::vector<ExperimentResult>> RunGrid(
    const ExperimentConfig& cfg) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;

  std::vector<Method> methods = cfg.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  std::vector<uint64_t> seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<double> epsilons = cfg.epsilons;
  std::sort(epsilons.begin(), epsilons.end());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

  struct Task {
    size_t seed_index;
    Method method;
    std::optional<double> epsilon;
  };
  std::vector<Task> tasks;
  for (size_t s = 0; s < seeds.size(); ++s) {
    for (Method m : methods) {
      if (m == Method::kNoPrivacy) {
        tasks.push_back({s, m, std::nullopt});
        continue;
      }
      for (double eps : epsilons) tasks.push_back({s, m, eps});
    }
  }

  std::vector<std::optional<SeedData>> data(seeds.size());
  std::vector<std::string> data_errors(seeds.size());
  std::vector<ExperimentResult> results(tasks.size());

  auto parallel_for = [&](size_t count, const auto& body) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next++; i < count; i = next++) body(i);
    };
    const int extra = std::min<int>(cfg.threads, static_cast<int>(count)) - 1;
    std::vector<std::thread> pool;
    for (int t = 0; t < extra; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
  };

  parallel_for(seeds.size(), [&](size_t s) {
    absl::StatusOr<SeedData> prepared = PrepareSeed(cfg, seeds[s]);
    if (prepared.ok()) {
      data[s] = *std::move(prepared);
    } else {
      data_errors[s] = std::string(prepared.status().message());
    }
  });
  parallel_for(tasks.size(), [&](size_t i) {
    const Task& task = tasks[i];
    if (!data[task.seed_index].has_value()) {
      ExperimentResult failed;
      failed.method = task.method;
      failed.epsilon = task.epsilon;
      failed.seed = seeds[task.seed_index];
      failed.metrics = {kNan, kNan, kNan, kNan};
      failed.error = "data generation failed: " + data_errors[task.seed_index];
      results[i] = std::move(failed);
      return;
    }
    results[i] = RunCell(cfg, *data[task.seed_index], seeds[task.seed_index],
                         task.method, task.epsilon);
  });

  std::sort(results.begin(), results.end(), ResultLess);
  return results;
}

namespace {

MetricStats StatsOf(const std::vector<double>& xs) {
  return {Mean(xs), SampleStd(xs)};
}

struct CellKey {
  Method method;
  std::optional<double> epsilon;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

double Improvement(double base, double dpsr) {
  return 100.0 * (base - dpsr) / base;
}

}  // namespace

Summary Summarize(const std::vector<ExperimentResult>& results) {
  Summary summary;
  // Per-cell RMSE keyed by seed, for pairing.
  std::map<CellKey, std::map<uint64_t, const ExperimentResult*>> cells;
  std::vector<double> epsilons;
  for (const ExperimentResult& r : results) {
    if (r.epsilon.has_value()) epsilons.push_back(*r.epsilon);
    if (!r.ok()) {
      summary.gaps.push_back(absl::StrFormat(
          "%s eps=%s seed=%d failed: %s", MethodName(r.method),
          r.epsilon ? absl::StrFormat("%g", *r.epsilon) : "none", r.seed,
          r.error));
      continue;
    }
    cells[{r.method, r.epsilon}][r.seed] = &r;
  }
  std::sort(epsilons.begin(), epsilons.end());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

  for (const auto& [key, by_seed] : cells) {
    std::vector<double> rmse, mae, p10, ndcg;
    for (const auto& [seed, r] : by_seed) {
      rmse.push_back(r->metrics.rmse);
      mae.push_back(r->metrics.mae);
      p10.push_back(r->metrics.precision_at_10);
      ndcg.push_back(r->metrics.ndcg_at_10);
    }
    CellSummary cell;
    cell.method = key.method;
    cell.epsilon = key.epsilon;
    cell.runs = static_cast<int>(by_seed.size());
    cell.rmse = StatsOf(rmse);
    cell.mae = StatsOf(mae);
    cell.precision_at_10 = StatsOf(p10);
    cell.ndcg_at_10 = StatsOf(ndcg);
    if (cell.runs < 2) {
      summary.gaps.push_back(absl::StrFormat(
          "%s eps=%s has %d run(s); std undefined", MethodName(key.method),
          key.epsilon ? absl::StrFormat("%g", *key.epsilon) : "none",
          cell.runs));
    }
    summary.cells.push_back(cell);
  }

  auto find_cell = [&](Method m, std::optional<double> eps) -> const CellSummary* {
    for (const CellSummary& c : summary.cells) {
      if (c.method == m && c.epsilon == eps) return &c;
    }
    return nullptr;
  };

  const CellSummary* no_privacy = find_cell(Method::kNoPrivacy, std::nullopt);
  for (double eps : epsilons) {
    EpsilonComparison cmp;
    cmp.epsilon = eps;
    const CellSummary* dpsr = find_cell(Method::kDpsr, eps);
    const CellSummary* laplace = find_cell(Method::kLaplace, eps);
    const CellSummary* gaussian = find_cell(Method::kGaussian, eps);
    if (dpsr == nullptr) {
      summary.gaps.push_back(absl::StrFormat("eps=%g: no dpsr cell", eps));
      summary.comparisons.push_back(cmp);
      continue;
    }
    cmp.dpsr_rmse_mean = dpsr->rmse.mean;
    if (laplace) {
      cmp.improvement_vs_laplace_pct = Improvement(laplace->rmse.mean, dpsr->rmse.mean);
    } else {
      summary.gaps.push_back(absl::StrFormat("eps=%g: no laplace cell", eps));
    }
    if (gaussian) {
      cmp.improvement_vs_gaussian_pct =
          Improvement(gaussian->rmse.mean, dpsr->rmse.mean);
    } else {
      summary.gaps.push_back(absl::StrFormat("eps=%g: no gaussian cell", eps));
    }
    if (no_privacy) {
      cmp.no_privacy_rmse_mean = no_privacy->rmse.mean;
      cmp.improvement_vs_no_privacy_pct =
          Improvement(no_privacy->rmse.mean, dpsr->rmse.mean);
    }

    if (laplace) {
      const auto& d_runs = cells.at({Method::kDpsr, eps});
      const auto& l_runs = cells.at({Method::kLaplace, eps});
      std::vector<double> l_rmse, d_rmse;
      for (const auto& [seed, r] : d_runs) {
        auto it = l_runs.find(seed);
        if (it == l_runs.end()) continue;
        d_rmse.push_back(r->metrics.rmse);
        l_rmse.push_back(it->second->metrics.rmse);
      }
      absl::StatusOr<TTestResult> t = PairedTTest(l_rmse, d_rmse);
      if (t.ok()) {
        cmp.t_stat = t->t_stat;
        cmp.p_value = t->p_value;
      } else {
        summary.gaps.push_back(absl::StrFormat(
            "eps=%g: t-test skipped (%s)", eps, t.status().message()));
      }
    }
    summary.comparisons.push_back(cmp);
  }
  return summary;
}

}  // namespace dpsr
