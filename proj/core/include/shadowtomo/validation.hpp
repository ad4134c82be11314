// Copyright 2026 The shadowtomo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHADOWTOMO_VALIDATION_HPP
#define SHADOWTOMO_VALIDATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace shadowtomo {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant checks across all modules, for `shadowtomo validate`.
std::vector<CheckResult> run_invariant_checks(std::uint64_t seed);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_VALIDATION_HPP
