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

#include "config.hpp"

#include <fstream>

namespace shadowtomo::cli {

namespace {

template <class T>
std::vector<T> as_list(const nlohmann::json& value) {
  if (value.is_array()) return value.get<std::vector<T>>();
  return {value.get<T>()};
}

}  // namespace

void apply_config(const nlohmann::json& config, Scenario& s, RunSettings& settings) {
  if (!config.is_object()) throw Error(errc::kInvalidArgument, "config must be a JSON object");
  try {
    for (const auto& [key, value] : config.items()) {
      if (key == "qubits") {
        s.qubits = value.get<int>();
      } else if (key == "trials") {
        s.trials = value.get<int>();
      } else if (key == "m_grid") {
        s.m_grid = as_list<int>(value);
      } else if (key == "l_grid") {
        s.l_grid = as_list<std::int64_t>(value);
      } else if (key == "mu") {
        s.mu_grid = as_list<double>(value);
      } else if (key == "eta_grid") {
        s.eta_grid = as_list<double>(value);
      } else if (key == "seed") {
        s.seed = value.get<std::uint64_t>();
      } else if (key == "rcond") {
        s.rcond = value.get<double>();
      } else if (key == "random_observables") {
        s.random_observables = value.get<int>();
      } else if (key == "ensemble_samples") {
        s.ensemble_samples = value.get<std::int64_t>();
      } else if (key == "force") {
        s.force = value.get<bool>();
      } else if (key == "workers") {
        settings.workers = value.get<int>();
      } else if (key == "out") {
        settings.out = value.get<std::string>();
      } else {
        throw Error(errc::kInvalidArgument, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::kInvalidArgument, std::string("config: ") + e.what());
  }
}

nlohmann::json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kInvalidArgument, "cannot open config " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::kInvalidArgument, path.string() + ": " + e.what());
  }
}

}  // namespace shadowtomo::cli
