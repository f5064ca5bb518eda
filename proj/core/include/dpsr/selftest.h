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

#ifndef DPSR_SELFTEST_H_
#define DPSR_SELFTEST_H_

#include <cstdint>
#include <string>
#include <vector>

namespace dpsr {

struct PropertyOutcome {
  std::string name;
  bool passed = false;
  int instances = 0;
  std::string detail;  // first counterexample when failed
};

// Randomised invariant checks over every pipeline module. Deterministic in
// `seed`.
std::vector<PropertyOutcome> RunPropertySuites(uint64_t seed, int instances);

}  // namespace dpsr

#endif  // DPSR_SELFTEST_H_
