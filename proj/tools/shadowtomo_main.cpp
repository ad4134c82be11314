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

// shadowtomo: runs the shadow-estimator experiments and writes CSV rows.
//
//   shadowtomo rls-vs-cs --qubits 3 --trials 50 --m-grid 4,8,16 --out rows.csv
//   shadowtomo validate
//
// Exit codes: 0 success, 2 invalid input or failed validation, 1 runtime error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "shadowtomo/experiments.hpp"
#include "shadowtomo/record_io.hpp"
#include "shadowtomo/validation.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct Flags {
  int qubits = 0;
  int trials = 0;
  std::vector<int> m_grid;
  std::vector<std::int64_t> l_grid;
  std::vector<double> mu;
  std::vector<double> eta_grid;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  int workers = 1;
  std::string dump_records;
  std::string load_records;
  std::string ensemble_file;
  double rcond = 0.0;
  int random_observables = 0;
  std::int64_t ensemble_samples = 0;
  bool force = false;
};

struct ScenarioCommand {
  shadowtomo::ScenarioKind kind;
  CLI::App* app = nullptr;
  Flags flags;
  std::vector<CLI::Option*> options;
};

CLI::Option* find(const ScenarioCommand& c, const std::string& name) {
  return c.app->get_option_no_throw(name);
}

bool given(const ScenarioCommand& c, const std::string& name) {
  const CLI::Option* opt = find(c, name);
  return opt != nullptr && opt->count() > 0;
}

void add_scenario_flags(ScenarioCommand& c) {
  Flags& f = c.flags;
  CLI::App& app = *c.app;
  app.add_option("--qubits", f.qubits, "Number of qubits n (D = 2^n)")->check(CLI::PositiveNumber);
  app.add_option("--trials", f.trials, "Independent trials T")->check(CLI::PositiveNumber);
  app.add_option("--m-grid", f.m_grid,
                 "Comma-separated settings M (multishot: total copies M*L)")
      ->delimiter(',');
  app.add_option("--l-grid", f.l_grid, "Comma-separated shots per setting L")->delimiter(',');
  app.add_option("--mu", f.mu, "RLS regularization; a list for mu-sweep")->delimiter(',');
  app.add_option("--eta-grid", f.eta_grid, "Comma-separated local-ensemble fractions")
      ->delimiter(',');
  app.add_option("--seed", f.seed, "Base seed");
  app.add_option("--out", f.out, "Output CSV path (default: stdout)");
  app.add_option("--config", f.config, "JSON config; flags override it");
  app.add_option("--workers", f.workers, "Worker threads (trials run in parallel)")
      ->check(CLI::PositiveNumber);
  auto* dump = app.add_option("--dump-records", f.dump_records, "Write simulated records");
  auto* load = app.add_option("--load-records", f.load_records, "Replay records from file");
  dump->excludes(load);
  app.add_option("--ensemble-file", f.ensemble_file,
                 "Fixed ensemble: unitaries as blocks of 're im' rows");
  app.add_option("--rcond", f.rcond, "LS pseudoinverse relative cutoff");
  app.add_option("--random-observables", f.random_observables,
                 "Random rank-1 observables (random-obs)");
  app.add_option("--ensemble-samples", f.ensemble_samples,
                 "Haar draws for the closed-form MSE (theorem1)");
  app.add_flag("--force", f.force, "Allow n > 7");
}

int run_scenario_command(const ScenarioCommand& c) {
  using namespace shadowtomo;
  Scenario s = default_scenario(c.kind);
  cli::RunSettings settings;
  const Flags& f = c.flags;
  if (given(c, "--config")) cli::apply_config(cli::load_config(f.config), s, settings);
  if (given(c, "--qubits")) s.qubits = f.qubits;
  if (given(c, "--trials")) s.trials = f.trials;
  if (given(c, "--m-grid")) s.m_grid = f.m_grid;
  if (given(c, "--l-grid")) s.l_grid = f.l_grid;
  if (given(c, "--mu")) s.mu_grid = f.mu;
  if (given(c, "--eta-grid")) s.eta_grid = f.eta_grid;
  if (given(c, "--seed")) s.seed = f.seed;
  if (given(c, "--rcond")) s.rcond = f.rcond;
  if (given(c, "--random-observables")) s.random_observables = f.random_observables;
  if (given(c, "--ensemble-samples")) s.ensemble_samples = f.ensemble_samples;
  if (given(c, "--force")) s.force = f.force;
  if (given(c, "--workers")) settings.workers = f.workers;
  if (given(c, "--out")) settings.out = f.out;
  if (given(c, "--ensemble-file")) s.fixed_unitaries = load_unitaries(f.ensemble_file);

  RunOptions options;
  options.workers = settings.workers;
  std::vector<RecordSet> loaded;
  std::vector<RecordSet> dumped;
  if (given(c, "--load-records")) {
    loaded = load_record_sets(f.load_records);
    options.load_records = &loaded;
  }
  if (given(c, "--dump-records")) options.dump_records = &dumped;

  std::cerr << "shadowtomo " << to_string(s.kind) << ": n=" << s.qubits
            << " D=" << (1 << s.qubits) << " trials=" << s.trials << " seed=" << s.seed
            << " workers=" << settings.workers << " LS rcond=" << s.rcond << '\n';

  const auto rows = run_scenario(s, options);
  if (settings.out) {
    emit_csv(rows, *settings.out);
  } else {
    write_csv(std::cout, rows);
  }
  if (options.dump_records) save_record_sets(f.dump_records, dumped);
  return 0;
}

int run_validate(std::uint64_t seed) {
  const auto results = shadowtomo::run_invariant_checks(seed);
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  bool all = true;
  for (const auto& r : results) {
    std::printf("%-4s  %-*s  %s\n", r.passed ? "PASS" : "FAIL", static_cast<int>(width),
                r.name.c_str(), r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("%zu checks, %s\n", results.size(), all ? "all passed" : "FAILURES");
  return all ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  using shadowtomo::ScenarioKind;
  CLI::App app{"Least-squares, ridge and classical-shadow estimator experiments"};
  app.require_subcommand(1);

  std::vector<ScenarioCommand> commands;
  const std::vector<std::pair<ScenarioKind, std::string>> kinds = {
      {ScenarioKind::kDoubleDescent, "LS error across M (interpolation peak)"},
      {ScenarioKind::kMuSweep, "RLS over a list of mu values"},
      {ScenarioKind::kRlsVsCs, "RLS and classical shadows across M"},
      {ScenarioKind::kRandomObservables, "RLS and CS on Haar-random rank-1 observables"},
      {ScenarioKind::kMismatch, "Global/local mixture ensembles (eta grid)"},
      {ScenarioKind::kMultishot, "Fixed copies M*L with varying shots L"},
      {ScenarioKind::kTheorem1Check, "Empirical CS MSE vs closed-form MSE"},
  };
  commands.reserve(kinds.size());
  for (const auto& [kind, help] : kinds) {
    ScenarioCommand c;
    c.kind = kind;
    c.app = app.add_subcommand(std::string(shadowtomo::to_string(kind)), help);
    commands.push_back(std::move(c));
  }
  for (auto& c : commands) add_scenario_flags(c);

  std::uint64_t validate_seed = 20240101;
  CLI::App* validate = app.add_subcommand("validate", "Run the invariant checks");
  validate->add_option("--seed", validate_seed, "Seed for the randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (validate->parsed()) return run_validate(validate_seed);
    for (const auto& c : commands) {
      if (c.app->parsed()) return run_scenario_command(c);
    }
  } catch (const shadowtomo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const std::string& code = e.code();
    if (code == shadowtomo::errc::kInvalidArgument ||
        code == shadowtomo::errc::kResourceGuard) {
      return kExitValidation;
    }
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
