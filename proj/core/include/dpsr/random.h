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

#ifndef DPSR_RANDOM_H_
#define DPSR_RANDOM_H_

#include <cstdint>
#include <random>

#include "absl/strings/string_view.h"

namespace dpsr {

// Seeded random source shared by every stochastic stage.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distribution transforms are written out here rather than
// taken from <random> because the standard leaves those unspecified, and
// results must be reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), 53 bits of precision.
  double Uniform();

  // Standard normal via the Box-Muller transform; caches the second variate.
  double StandardNormal();

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, bound) by rejection, bound > 0.
  uint64_t UniformIndex(uint64_t bound);

 private:
  std::mt19937_64 engine_;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// 64-bit FNV-1a over the bytes of `s`.
uint64_t HashString(absl::string_view s);

// Seed for one grid cell stage:
//   Mix64(Mix64(Mix64(run_seed ^ HashString(method)) ^ bits(epsilon))
//         ^ HashString(stage_tag))
// where bits(epsilon) is the IEEE-754 bit pattern of epsilon (0 when the
// method ignores epsilon). Order of grid execution never enters the seed.
uint64_t DeriveSeed(uint64_t run_seed, absl::string_view method, double epsilon,
                    absl::string_view stage_tag);

}  // namespace dpsr

#endif  // DPSR_RANDOM_H_
