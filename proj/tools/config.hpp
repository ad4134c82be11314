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

#ifndef SHADOWTOMO_TOOLS_CONFIG_HPP
#define SHADOWTOMO_TOOLS_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "shadowtomo/experiments.hpp"

namespace shadowtomo::cli {

/// Settings that live next to the scenario but are not part of it.
struct RunSettings {
  int workers = 1;
  std::optional<std::string> out;
};

/// Applies a JSON config object on top of `scenario`. Unknown keys and wrong
/// types throw shadowtomo::Error with code `invalid-argument`.
void apply_config(const nlohmann::json& config, Scenario& scenario, RunSettings& settings);

nlohmann::json load_config(const std::filesystem::path& path);

}  // namespace shadowtomo::cli

#endif  // SHADOWTOMO_TOOLS_CONFIG_HPP
