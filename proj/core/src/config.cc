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

#include "dpsr/config.h"

#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace dpsr {
namespace {

absl::Status BadValue(absl::string_view key, absl::string_view value) {
  return absl::InvalidArgumentError(
      absl::StrFormat("bad value '%s' for key '%s'", value, key));
}

absl::Status SetInt(absl::string_view key, absl::string_view value, int& out) {
  if (!absl::SimpleAtoi(value, &out)) return BadValue(key, value);
  return absl::OkStatus();
}

absl::Status SetDouble(absl::string_view key, absl::string_view value,
                       double& out) {
  if (!absl::SimpleAtod(value, &out)) return BadValue(key, value);
  return absl::OkStatus();
}

std::vector<absl::string_view> ListItems(absl::string_view value) {
  std::vector<absl::string_view> items;
  for (absl::string_view item : absl::StrSplit(value, ',')) {
    item = absl::StripAsciiWhitespace(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

absl::Status SetConfigValue(ExperimentConfig& cfg, absl::string_view key,
                            absl::string_view value) {
  value = absl::StripAsciiWhitespace(value);
  if (key == "synth.m") return SetInt(key, value, cfg.synth.m);
  if (key == "synth.n") return SetInt(key, value, cfg.synth.n);
  if (key == "synth.d_true") return SetInt(key, value, cfg.synth.d_true);
  if (key == "synth.noise_std") return SetDouble(key, value, cfg.synth.noise_std);
  if (key == "synth.density") return SetDouble(key, value, cfg.synth.density);
  if (key == "epsilons") {
    cfg.epsilons.clear();
    for (absl::string_view item : ListItems(value)) {
      double eps;
      if (!absl::SimpleAtod(item, &eps)) return BadValue(key, item);
      cfg.epsilons.push_back(eps);
    }
    return absl::OkStatus();
  }
  if (key == "seeds") {
    cfg.seeds.clear();
    for (absl::string_view item : ListItems(value)) {
      uint64_t seed;
      if (!absl::SimpleAtoi(item, &seed)) return BadValue(key, item);
      cfg.seeds.push_back(seed);
    }
    return absl::OkStatus();
  }
  if (key == "methods") {
    cfg.methods.clear();
    for (absl::string_view item : ListItems(value)) {
      absl::StatusOr<Method> m = ParseMethod(item);
      if (!m.ok()) return m.status();
      cfg.methods.push_back(*m);
    }
    return absl::OkStatus();
  }
  if (key == "delta") return SetDouble(key, value, cfg.delta);
  if (key == "test_fraction") return SetDouble(key, value, cfg.test_fraction);
  if (key == "output_path") {
    cfg.output_path = std::string(value);
    return absl::OkStatus();
  }
  DpsrParams& d = cfg.dpsr_params;
  if (key == "dpsr.alpha") return SetDouble(key, value, d.alpha);
  if (key == "dpsr.beta") return SetDouble(key, value, d.beta);
  if (key == "dpsr.k_neighbors") return SetInt(key, value, d.k_neighbors);
  if (key == "dpsr.rank_d") return SetInt(key, value, d.rank_d);
  if (key == "dpsr.lambda_mix") return SetDouble(key, value, d.lambda_mix);
  if (key == "dpsr.n_iter") return SetInt(key, value, d.n_iter);
  if (key == "dpsr.t_reproject") return SetInt(key, value, d.t_reproject);
  MfConfig& mf = cfg.mf;
  if (key == "mf.latent_d") return SetInt(key, value, mf.latent_d);
  if (key == "mf.epochs") return SetInt(key, value, mf.epochs);
  if (key == "mf.learn_rate") return SetDouble(key, value, mf.learn_rate);
  if (key == "mf.init_std") return SetDouble(key, value, mf.init_std);
  if (key == "mf.adam_beta1") return SetDouble(key, value, mf.adam_beta1);
  if (key == "mf.adam_beta2") return SetDouble(key, value, mf.adam_beta2);
  if (key == "mf.adam_eps") return SetDouble(key, value, mf.adam_eps);
  if (key == "mf.reg_weight") return SetDouble(key, value, mf.reg_weight);
  if (key == "dpsr_eval") {
    if (value == "mf") {
      cfg.dpsr_eval = DpsrEvalMode::kTrainMf;
    } else if (value == "direct") {
      cfg.dpsr_eval = DpsrEvalMode::kDirect;
    } else {
      return BadValue(key, value);
    }
    return absl::OkStatus();
  }
  if (key == "threads") return SetInt(key, value, cfg.threads);
  if (key == "record_wall_time") {
    if (!absl::SimpleAtob(value, &cfg.record_wall_time)) {
      return BadValue(key, value);
    }
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown config key '%s'", key));
}

absl::StatusOr<ExperimentConfig> ParseConfigText(absl::string_view text) {
  ExperimentConfig cfg;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrFormat("config line %d: expected key = value", line_no));
    }
    const absl::string_view key = absl::StripAsciiWhitespace(line.substr(0, eq));
    if (absl::Status s = SetConfigValue(cfg, key, line.substr(eq + 1)); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("config line %d: %s", line_no, s.message()));
    }
  }
  return cfg;
}

std::string FormatConfigText(const ExperimentConfig& cfg) {
  std::vector<std::string> methods;
  for (Method m : cfg.methods) methods.emplace_back(MethodName(m));
  const DpsrParams& d = cfg.dpsr_params;
  const MfConfig& mf = cfg.mf;
  std::string out;
  absl::StrAppendFormat(&out, "synth.m = %d\nsynth.n = %d\nsynth.d_true = %d\n",
                        cfg.synth.m, cfg.synth.n, cfg.synth.d_true);
  absl::StrAppendFormat(&out, "synth.noise_std = %.17g\nsynth.density = %.17g\n",
                        cfg.synth.noise_std, cfg.synth.density);
  absl::StrAppend(&out, "epsilons = ",
                  absl::StrJoin(cfg.epsilons, ",",
                                [](std::string* o, double e) {
                                  absl::StrAppendFormat(o, "%.17g", e);
                                }),
                  "\n");
  absl::StrAppend(&out, "seeds = ", absl::StrJoin(cfg.seeds, ","), "\n");
  absl::StrAppend(&out, "methods = ", absl::StrJoin(methods, ","), "\n");
  absl::StrAppendFormat(&out, "delta = %.17g\ntest_fraction = %.17g\n",
                        cfg.delta, cfg.test_fraction);
  absl::StrAppend(&out, "output_path = ", cfg.output_path, "\n");
  absl::StrAppendFormat(&out,
                        "dpsr.alpha = %.17g\ndpsr.beta = %.17g\n"
                        "dpsr.k_neighbors = %d\ndpsr.rank_d = %d\n"
                        "dpsr.lambda_mix = %.17g\ndpsr.n_iter = %d\n"
                        "dpsr.t_reproject = %d\n",
                        d.alpha, d.beta, d.k_neighbors, d.rank_d, d.lambda_mix,
                        d.n_iter, d.t_reproject);
  absl::StrAppendFormat(&out,
                        "mf.latent_d = %d\nmf.epochs = %d\n"
                        "mf.learn_rate = %.17g\nmf.init_std = %.17g\n"
                        "mf.adam_beta1 = %.17g\nmf.adam_beta2 = %.17g\n"
                        "mf.adam_eps = %.17g\nmf.reg_weight = %.17g\n",
                        mf.latent_d, mf.epochs, mf.learn_rate, mf.init_std,
                        mf.adam_beta1, mf.adam_beta2, mf.adam_eps,
                        mf.reg_weight);
  absl::StrAppend(&out, "dpsr_eval = ",
                  cfg.dpsr_eval == DpsrEvalMode::kDirect ? "direct" : "mf",
                  "\n");
  absl::StrAppend(&out, "threads = ", cfg.threads, "\n");
  absl::StrAppend(&out, "record_wall_time = ",
                  cfg.record_wall_time ? "true" : "false", "\n");
  return out;
}

}  // namespace dpsr
