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

#include "dpsr/results_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace dpsr {
namespace {

std::string Fixed(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.6f", x);
}

std::string Fixed(const std::optional<double>& x) {
  return x.has_value() ? Fixed(*x) : "";
}

std::string General(const std::optional<double>& x) {
  if (!x.has_value()) return "";
  if (std::isinf(*x)) return *x > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.6g", *x);
}

absl::StatusOr<double> ParseMetric(absl::string_view field, int line) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v;
  if (!absl::SimpleAtod(field, &v)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("line %d: bad number '%s'", line, field));
  }
  return v;
}

}  // namespace

std::string FormatResultsCsv(std::vector<ExperimentResult> results) {
  std::sort(results.begin(), results.end(), ResultLess);
  std::string out = absl::StrCat(kResultsHeader, "\n");
  for (const ExperimentResult& r : results) {
    absl::StrAppend(&out, MethodName(r.method), ",", Fixed(r.epsilon), ",",
                    r.seed, ",", Fixed(r.metrics.rmse), ",",
                    Fixed(r.metrics.mae), ",", Fixed(r.metrics.precision_at_10),
                    ",", Fixed(r.metrics.ndcg_at_10), ",",
                    Fixed(r.wall_time_seconds), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<ExperimentResult>> ParseResultsCsv(
    absl::string_view text) {
  std::vector<ExperimentResult> results;
  int line_no = 0;
  bool seen_header = false;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = absl::StripSuffix(line, "\r");
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != kResultsHeader) {
        return absl::InvalidArgumentError(
            absl::StrFormat("unexpected results header '%s'", line));
      }
      seen_header = true;
      continue;
    }
    std::vector<absl::string_view> f = absl::StrSplit(line, ',');
    if (f.size() != 8) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d: expected 8 fields, got %d", line_no, f.size()));
    }
    ExperimentResult r;
    absl::StatusOr<Method> method = ParseMethod(f[0]);
    if (!method.ok()) return method.status();
    r.method = *method;
    if (!f[1].empty()) {
      double eps;
      if (!absl::SimpleAtod(f[1], &eps)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("line %d: bad epsilon '%s'", line_no, f[1]));
      }
      r.epsilon = eps;
    }
    if (!absl::SimpleAtoi(f[2], &r.seed)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: bad seed '%s'", line_no, f[2]));
    }
    double* targets[] = {&r.metrics.rmse, &r.metrics.mae,
                         &r.metrics.precision_at_10, &r.metrics.ndcg_at_10,
                         &r.wall_time_seconds};
    for (int k = 0; k < 5; ++k) {
      absl::StatusOr<double> v = ParseMetric(f[3 + k], line_no);
      if (!v.ok()) return v.status();
      *targets[k] = *v;
    }
    if (std::isnan(r.metrics.rmse)) r.error = "failed in source run";
    results.push_back(std::move(r));
  }
  if (!seen_header) return absl::InvalidArgumentError("results file is empty");
  return results;
}

std::string FormatSummaryCsv(const Summary& summary) {
  std::string out = absl::StrCat(kSummaryHeader, "\n");
  for (const CellSummary& c : summary.cells) {
    absl::StrAppend(&out, Fixed(c.epsilon), ",", MethodName(c.method), ",",
                    Fixed(c.rmse.mean), ",", Fixed(c.rmse.std), ",",
                    Fixed(c.mae.mean), ",", Fixed(c.mae.std), ",",
                    Fixed(c.precision_at_10.mean), ",",
                    Fixed(c.precision_at_10.std), ",",
                    Fixed(c.ndcg_at_10.mean), ",", Fixed(c.ndcg_at_10.std),
                    "\n");
  }
  return out;
}

std::string FormatImprovementCsv(const Summary& summary) {
  std::string out = absl::StrCat(kImprovementHeader, "\n");
  for (const EpsilonComparison& c : summary.comparisons) {
    absl::StrAppend(&out, Fixed(c.epsilon), ",",
                    Fixed(c.improvement_vs_laplace_pct), ",",
                    Fixed(c.improvement_vs_gaussian_pct), ",",
                    General(c.t_stat), ",", General(c.p_value), "\n");
  }
  return out;
}

std::string FormatNoPrivacyCsv(const Summary& summary) {
  std::string out = absl::StrCat(kNoPrivacyHeader, "\n");
  for (const EpsilonComparison& c : summary.comparisons) {
    absl::StrAppend(&out, Fixed(c.epsilon), ",", Fixed(c.dpsr_rmse_mean), ",",
                    Fixed(c.no_privacy_rmse_mean), ",",
                    Fixed(c.improvement_vs_no_privacy_pct), "\n");
  }
  return out;
}

absl::Status WriteTextFile(const std::string& path, absl::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(absl::StrFormat("cannot open '%s'", path));
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    return absl::DataLossError(absl::StrFormat("short write on '%s'", path));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot read '%s'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string SiblingPath(const std::string& results_path,
                        absl::string_view suffix) {
  absl::string_view stem = results_path;
  const size_t slash = stem.find_last_of('/');
  const size_t dot = stem.find_last_of('.');
  absl::string_view ext;
  if (dot != absl::string_view::npos &&
      (slash == absl::string_view::npos || dot > slash)) {
    ext = stem.substr(dot);
    stem = stem.substr(0, dot);
  }
  return absl::StrCat(stem, "_", suffix, ext.empty() ? ".csv" : ext);
}

}  // namespace dpsr
