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

#ifndef DPSR_CONFIG_H_
#define DPSR_CONFIG_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpsr/experiment.h"

namespace dpsr {

// Key-value experiment configuration, one `key = value` per line. `#` starts
// a comment. Lists are comma separated. Keys:
//
//   synth.m synth.n synth.d_true synth.noise_std synth.density
//   epsilons seeds methods delta test_fraction output_path
//   dpsr.alpha dpsr.beta dpsr.k_neighbors dpsr.rank_d dpsr.lambda_mix
//   dpsr.n_iter dpsr.t_reproject
//   mf.latent_d mf.epochs mf.learn_rate mf.init_std mf.adam_beta1
//   mf.adam_beta2 mf.adam_eps mf.reg_weight
//   dpsr_eval (mf | direct) threads record_wall_time (true | false)
//
// Unset keys keep the ExperimentConfig defaults. Unknown keys are errors.
absl::StatusOr<ExperimentConfig> ParseConfigText(absl::string_view text);

// Applies one key to `cfg`; shared by the file parser and flag overrides.
absl::Status SetConfigValue(ExperimentConfig& cfg, absl::string_view key,
                            absl::string_view value);

// Every key with its current value, in the order listed above.
std::string FormatConfigText(const ExperimentConfig& cfg);

}  // namespace dpsr

#endif  // DPSR_CONFIG_H_
