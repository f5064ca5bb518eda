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

#ifndef DPSR_STATS_H_
#define DPSR_STATS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace dpsr {

struct TTestResult {
  double t_stat = 0.0;
  double p_value = 1.0;
  int dof = 0;
};

// Two-sided paired t-test on a - b. With zero spread in the differences:
// t = 0, p = 1 when the mean difference is 0, otherwise t = +/-infinity and
// p = 0.
absl::StatusOr<TTestResult> PairedTTest(std::span<const double> a,
                                        std::span<const double> b);

// Two-sided tail P(|T| >= |t|) for Student's t with `dof` degrees of freedom,
// I_{dof / (dof + t^2)}(dof / 2, 1 / 2).
double StudentTTwoSidedP(double t, double dof);

double Mean(std::span<const double> xs);
// Sample standard deviation (n - 1 divisor); 0 for fewer than two values.
double SampleStd(std::span<const double> xs);

}  // namespace dpsr

#endif  // DPSR_STATS_H_
