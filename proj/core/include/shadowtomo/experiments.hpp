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

#ifndef SHADOWTOMO_EXPERIMENTS_HPP
#define SHADOWTOMO_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shadowtomo/estimators.hpp"
#include "shadowtomo/quantum.hpp"
#include "shadowtomo/record_io.hpp"

namespace shadowtomo {

enum class ScenarioKind {
  kDoubleDescent,
  kMuSweep,
  kRlsVsCs,
  kRandomObservables,
  kMismatch,
  kMultishot,
  kTheorem1Check,
};

/// CLI name, e.g. "double-descent".
std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);

/// Largest qubit count accepted without `force`; the LS/RLS frame is a
/// dense 4^n x 4^n complex matrix.
inline constexpr int kMaxUnforcedQubits = 7;

struct Scenario {
  ScenarioKind kind = ScenarioKind::kRlsVsCs;
  int qubits = 3;
  int trials = 50;
  /// Settings M per grid point. For kMultishot these are total copies M*L
  /// and M = copies / L.
  std::vector<int> m_grid;
  std::vector<std::int64_t> l_grid{1};
  /// kMuSweep sweeps the whole list; other scenarios use the first entry.
  std::vector<double> mu_grid{kDefaultMu};
  std::vector<double> eta_grid{0.0};
  int random_observables = 50;
  /// Haar draws for the closed-form MSE; 0 means "same as trials".
  std::int64_t ensemble_samples = 0;
  double rcond = kDefaultRcond;
  std::uint64_t seed = 1;
  bool force = false;
  /// Replaces global-Haar sampling by this deterministic list when set.
  std::optional<std::vector<Matrix>> fixed_unitaries;
};

/// Desk-scale defaults for each scenario (n = 3).
Scenario default_scenario(ScenarioKind kind);

/// Throws `invalid-argument` (or `resource-guard`) for unusable scenarios.
void validate(const Scenario& scenario);

struct ResultRow {
  std::string scenario;
  int trial = -1;  ///< -1 marks rows aggregated over trials
  int settings = 0;
  std::int64_t shots = 1;
  double mu = 0.0;
  double eta = 0.0;
  std::string method;
  std::string metric;
  double value = 0.0;
};

bool operator==(const ResultRow& a, const ResultRow& b);

/// rho = e_0 e_0^dagger and the three rank-1 observables with ground truths
/// (1, 1/2, 0).
struct CanonicalProblem {
  DensityMatrix state;
  std::array<Observable, 3> observables;
  std::array<double, 3> truths;
};

CanonicalProblem canonical_state_and_observables(int qubits);

struct RunOptions {
  int workers = 1;
  /// Replay these trials instead of simulating (single-plan scenarios only).
  const std::vector<RecordSet>* load_records = nullptr;
  /// Receives the simulated records of every trial (single-plan scenarios only).
  std::vector<RecordSet>* dump_records = nullptr;
};

/// Runs every trial and grid point. Rows come back sorted (see sort_rows) and
/// do not depend on the worker count.
std::vector<ResultRow> run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Orders by (trial, M, L, method, metric), then mu and eta.
void sort_rows(std::vector<ResultRow>& rows);

inline constexpr std::string_view kCsvHeader = "scenario,trial,M,L,mu,eta,method,metric,value";

/// Header line then one line per row (sorted copy), doubles with 17
/// significant digits.
void write_csv(std::ostream& out, std::span<const ResultRow> rows);
void emit_csv(std::span<const ResultRow> rows, const std::filesystem::path& path);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_EXPERIMENTS_HPP
