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

#ifndef DPSR_RESULTS_IO_H_
#define DPSR_RESULTS_IO_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpsr/experiment.h"

namespace dpsr {

inline constexpr absl::string_view kResultsHeader =
    "method,epsilon,seed,rmse,mae,precision_at_10,ndcg_at_10,wall_time_s";
inline constexpr absl::string_view kSummaryHeader =
    "epsilon,method,rmse_mean,rmse_std,mae_mean,mae_std,p10_mean,p10_std,"
    "ndcg_mean,ndcg_std";
inline constexpr absl::string_view kImprovementHeader =
    "epsilon,improvement_vs_laplace_pct,improvement_vs_gaussian_pct,t_stat,"
    "p_value";
inline constexpr absl::string_view kNoPrivacyHeader =
    "epsilon,dpsr_rmse_mean,no_privacy_rmse_mean,improvement_vs_no_privacy_pct";

// Results file: one row per cell sorted with ResultLess, fixed 6-decimal
// floats, empty epsilon for no_privacy, empty metric fields for failed cells.
std::string FormatResultsCsv(std::vector<ExperimentResult> results);
absl::StatusOr<std::vector<ExperimentResult>> ParseResultsCsv(
    absl::string_view text);

// Per (method, epsilon) mean and std; the Figure 1 series.
std::string FormatSummaryCsv(const Summary& summary);
// Improvement percentages and DPSR-vs-Laplace t-tests; the Figure 2 series.
std::string FormatImprovementCsv(const Summary& summary);
// DPSR against the single no_privacy row at every epsilon.
std::string FormatNoPrivacyCsv(const Summary& summary);

absl::Status WriteTextFile(const std::string& path, absl::string_view text);
absl::StatusOr<std::string> ReadTextFile(const std::string& path);

// "out/results.csv" -> "out/results_summary.csv" and so on.
std::string SiblingPath(const std::string& results_path,
                        absl::string_view suffix);

}  // namespace dpsr

#endif  // DPSR_RESULTS_IO_H_
