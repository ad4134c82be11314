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

#include "shadowtomo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "shadowtomo/ensembles.hpp"
#include "shadowtomo/measurement.hpp"
#include "shadowtomo/theory.hpp"

namespace shadowtomo {

namespace {

constexpr std::array<std::pair<ScenarioKind, std::string_view>, 7> kKindNames{{
    {ScenarioKind::kDoubleDescent, "double-descent"},
    {ScenarioKind::kMuSweep, "mu-sweep"},
    {ScenarioKind::kRlsVsCs, "rls-vs-cs"},
    {ScenarioKind::kRandomObservables, "random-obs"},
    {ScenarioKind::kMismatch, "mismatch"},
    {ScenarioKind::kMultishot, "multishot"},
    {ScenarioKind::kTheorem1Check, "theorem1"},
}};

constexpr std::string_view kLambdaPrefix = "lambda-hat-";

bool single_plan(ScenarioKind kind) {
  return kind == ScenarioKind::kDoubleDescent || kind == ScenarioKind::kMuSweep ||
         kind == ScenarioKind::kRlsVsCs || kind == ScenarioKind::kRandomObservables;
}

std::vector<int> powers_of_two(int lo_exp, int hi_exp) {
  std::vector<int> out;
  for (int e = lo_exp; e <= hi_exp; ++e) out.push_back(1 << e);
  return out;
}

struct NamedObservable {
  std::string suffix;  // "0", "1", "2", "r0", ...
  Observable observable;
  double truth;
};

struct Context {
  const Scenario& scenario;
  int dim;
  CanonicalProblem problem;
  std::vector<NamedObservable> observables;
  const std::vector<RecordSet>* loaded;
};

struct GridPoint {
  int trial;
  int settings;
  std::int64_t shots;
  double eta;
};

EnsembleSpec base_ensemble(const Scenario& s, int dim) {
  if (s.fixed_unitaries) return Fixed{*s.fixed_unitaries};
  return GlobalHaar{dim};
}

double method_mu(const ShadowMethod& m) {
  if (const auto* r = std::get_if<RidgeRegression>(&m)) return r->mu;
  return 0.0;
}

void check_estimate(const ShadowEstimate& est) {
  const double scale = std::max(1.0, est.matrix.cwiseAbs().maxCoeff());
  if (hermiticity_defect(est.matrix) > 1e-8 * scale) {
    throw Error(errc::kNonHermitian,
                std::string(to_string(est.method)) + " estimate is not Hermitian");
  }
  if (est.method == Method::kCS && std::abs(est.matrix.trace().real() - 1.0) > 1e-10) {
    throw Error(errc::kInvalidArgument, "CS estimate trace deviates from 1");
  }
}

// Shares one frame across the LS/RLS methods evaluated on a prefix.
class PrefixEstimator {
 public:
  explicit PrefixEstimator(std::span<const MeasurementRecord> records)
      : records_(records), partial_(mean_adjoint(records)) {}

  ShadowEstimate average(const ShadowMethod& method) {
    if (std::holds_alternative<ClassicalShadow>(method)) {
      return ShadowEstimate{cs_channel_inverse(partial_), Method::kCS};
    }
    if (!frame_) frame_.emplace(FrameOperator::build(records_));
    if (const auto* ls = std::get_if<LeastSquares>(&method)) {
      return ShadowEstimate{LsSolver(*frame_, ls->rcond).apply(partial_), Method::kLS};
    }
    const double mu = std::get<RidgeRegression>(method).mu;
    return ShadowEstimate{RlsSolver(*frame_, mu).apply(partial_), Method::kRLS};
  }

 private:
  std::span<const MeasurementRecord> records_;
  Matrix partial_;
  std::optional<FrameOperator> frame_;
};

void evaluate(const Context& ctx, std::span<const MeasurementRecord> records,
              std::span<const ShadowMethod> methods, const GridPoint& point, bool full_metrics,
              std::vector<ResultRow>& out) {
  PrefixEstimator estimator(records);
  const std::string scenario_name(to_string(ctx.scenario.kind));
  for (const auto& method : methods) {
    const ShadowEstimate est = estimator.average(method);
    check_estimate(est);
    auto emit = [&](std::string metric, double value) {
      out.push_back(ResultRow{scenario_name, point.trial, point.settings, point.shots,
                              method_mu(method), point.eta, std::string(to_string(est.method)),
                              std::move(metric), value});
    };
    const double trace = est.matrix.trace().real();
    emit("trace", trace);
    for (const auto& named : ctx.observables) {
      emit(std::string(kLambdaPrefix) + named.suffix, expectation(named.observable, est));
    }
    if (!full_metrics) continue;
    emit("frobenius-error", frobenius_error(est.matrix, ctx.problem.state.matrix()));
    const EigenvalueSplit split = eigenvalue_split(est.matrix);
    emit("eig-pos", split.positive);
    emit("eig-neg", split.negative);
    if (std::abs(trace - 1.0) <= 0.5) {
      emit("loglik", log_likelihood(records, project_physical(est.matrix)).value);
    }
  }
}

std::vector<ShadowMethod> methods_for(const Scenario& s) {
  std::vector<ShadowMethod> methods;
  switch (s.kind) {
    case ScenarioKind::kDoubleDescent:
      methods.push_back(LeastSquares{s.rcond});
      break;
    case ScenarioKind::kMuSweep:
      for (double mu : s.mu_grid) methods.push_back(RidgeRegression{mu});
      break;
    case ScenarioKind::kTheorem1Check:
      methods.push_back(ClassicalShadow{});
      break;
    default:
      methods.push_back(RidgeRegression{s.mu_grid.front()});
      methods.push_back(ClassicalShadow{});
      break;
  }
  return methods;
}

struct TrialOutput {
  std::vector<ResultRow> rows;
  std::optional<RecordSet> records;
};

TrialOutput run_trial(const Context& ctx, int trial) {
  const Scenario& s = ctx.scenario;
  const RngStream base(s.seed, static_cast<std::uint64_t>(trial), 0);
  const std::vector<ShadowMethod> methods = methods_for(s);
  TrialOutput output;

  auto run_prefixes = [&](const std::vector<MeasurementRecord>& records,
                          const std::vector<int>& grid, std::int64_t shots, double eta,
                          bool full) {
    for (int m : grid) {
      std::span<const MeasurementRecord> prefix(records.data(), static_cast<std::size_t>(m));
      evaluate(ctx, prefix, methods, GridPoint{trial, m, shots, eta}, full, output.rows);
    }
  };

  const int max_m = *std::max_element(s.m_grid.begin(), s.m_grid.end());
  switch (s.kind) {
    case ScenarioKind::kDoubleDescent:
    case ScenarioKind::kMuSweep:
    case ScenarioKind::kRlsVsCs:
    case ScenarioKind::kRandomObservables: {
      std::vector<MeasurementRecord> records;
      std::int64_t shots = s.l_grid.front();
      if (ctx.loaded) {
        const RecordSet& set = (*ctx.loaded)[static_cast<std::size_t>(trial)];
        if (set.records.size() < static_cast<std::size_t>(max_m)) {
          throw Error(errc::kInvalidArgument, "loaded trial " + std::to_string(trial) +
                                                  " has fewer records than the largest M");
        }
        records = set.records;
        shots = set.shots;
      } else {
        const MeasurementPlan plan{max_m, shots, base_ensemble(s, ctx.dim)};
        records = run_plan(ctx.problem.state, plan, base);
      }
      run_prefixes(records, s.m_grid, shots, 0.0, true);
      output.records = RecordSet{ctx.dim, shots, s.seed, static_cast<std::uint64_t>(trial),
                                 std::move(records)};
      break;
    }
    case ScenarioKind::kMismatch: {
      for (double eta : s.eta_grid) {
        const MeasurementPlan plan{max_m, s.l_grid.front(), Mixture{eta, s.qubits}};
        const auto records = run_plan(ctx.problem.state, plan, base);
        run_prefixes(records, s.m_grid, s.l_grid.front(), eta, true);
      }
      break;
    }
    case ScenarioKind::kMultishot: {
      for (std::int64_t shots : s.l_grid) {
        std::vector<int> grid;
        for (int copies : s.m_grid) grid.push_back(static_cast<int>(copies / shots));
        const int settings = *std::max_element(grid.begin(), grid.end());
        const MeasurementPlan plan{settings, shots, base_ensemble(s, ctx.dim)};
        const auto records = run_plan(ctx.problem.state, plan, base);
        run_prefixes(records, grid, shots, 0.0, true);
      }
      break;
    }
    case ScenarioKind::kTheorem1Check: {
      for (std::int64_t shots : s.l_grid) {
        const MeasurementPlan plan{max_m, shots, GlobalHaar{ctx.dim}};
        const auto records = run_plan(ctx.problem.state, plan, base);
        run_prefixes(records, s.m_grid, shots, 0.0, false);
      }
      break;
    }
  }
  return output;
}

std::vector<TrialOutput> run_trials(const Context& ctx, int trials, int workers) {
  std::vector<TrialOutput> outputs(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      try {
        outputs[static_cast<std::size_t>(t)] = run_trial(ctx, t);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  };
  const int pool = std::max(1, std::min(workers, trials));
  if (pool == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int i = 0; i < pool; ++i) threads.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outputs;
}

// MSE rows over trials for every lambda-hat series.
void aggregate(const Context& ctx, const std::vector<ResultRow>& rows,
               std::vector<ResultRow>& out) {
  using Key = std::tuple<int, std::int64_t, double, double, std::string, std::string>;
  std::map<Key, std::vector<std::pair<int, double>>> series;
  for (const auto& r : rows) {
    if (r.trial < 0 || !r.metric.starts_with(kLambdaPrefix)) continue;
    series[{r.settings, r.shots, r.mu, r.eta, r.method, r.metric}].emplace_back(r.trial, r.value);
  }
  std::map<std::string, double> truths;
  for (const auto& named : ctx.observables) truths[named.suffix] = named.truth;

  const std::string scenario_name(to_string(ctx.scenario.kind));
  using GroupKey = std::tuple<int, std::int64_t, double, double, std::string>;
  std::map<GroupKey, std::vector<double>> random_mse;
  for (auto& [key, values] : series) {
    if (values.size() < 2) continue;
    std::sort(values.begin(), values.end());
    std::vector<double> estimates;
    estimates.reserve(values.size());
    for (const auto& [trial, v] : values) estimates.push_back(v);
    const auto& [m, l, mu, eta, method, metric] = key;
    const std::string suffix = metric.substr(kLambdaPrefix.size());
    const MseEstimate mse = empirical_mse(estimates, truths.at(suffix));
    out.push_back(ResultRow{scenario_name, -1, m, l, mu, eta, method, "mse-" + suffix, mse.value});
    out.push_back(
        ResultRow{scenario_name, -1, m, l, mu, eta, method, "mse-se-" + suffix, mse.std_error});
    if (suffix.starts_with('r')) random_mse[{m, l, mu, eta, method}].push_back(mse.value);
  }
  for (const auto& [key, values] : random_mse) {
    const auto& [m, l, mu, eta, method] = key;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    out.push_back(ResultRow{scenario_name, -1, m, l, mu, eta, method, "mse-random", mean});
  }
}

void theorem_rows(const Context& ctx, std::vector<ResultRow>& out) {
  const Scenario& s = ctx.scenario;
  const std::int64_t samples = s.ensemble_samples > 0 ? s.ensemble_samples : s.trials;
  const RngStream base(s.seed, 0, 0, Lane::kTheory);
  const std::string scenario_name(to_string(s.kind));
  for (int m : s.m_grid) {
    for (std::int64_t l : s.l_grid) {
      for (std::size_t i = 0; i < ctx.problem.observables.size(); ++i) {
        const MseEstimate mse = mse_theorem1(ctx.problem.state, ctx.problem.observables[i],
                                             GlobalHaar{ctx.dim}, m, l, samples, base);
        const std::string suffix = std::to_string(i);
        out.push_back(ResultRow{scenario_name, -1, m, l, 0.0, 0.0, "theorem1", "mse-" + suffix,
                                mse.value});
        out.push_back(ResultRow{scenario_name, -1, m, l, 0.0, 0.0, "theorem1",
                                "mse-se-" + suffix, mse.std_error});
      }
    }
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Scenario default_scenario(ScenarioKind kind) {
  Scenario s;
  s.kind = kind;
  s.qubits = 3;
  s.trials = 50;
  s.m_grid = powers_of_two(2, 9);
  switch (kind) {
    case ScenarioKind::kMuSweep:
      s.mu_grid = {0.01, 0.1, 1.0};
      break;
    case ScenarioKind::kMismatch:
      s.m_grid = {128};
      s.eta_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
      break;
    case ScenarioKind::kMultishot:
      s.m_grid = powers_of_two(6, 12);
      s.l_grid = {1, 8, 64};
      break;
    case ScenarioKind::kTheorem1Check:
      s.qubits = 2;
      s.trials = 2000;
      s.m_grid = {16};
      s.l_grid = {1, 4, 16};
      break;
    default:
      break;
  }
  return s;
}

void validate(const Scenario& s) {
  auto fail = [](const std::string& what) { throw Error(errc::kInvalidArgument, what); };
  if (s.qubits < 1) fail("qubits must be >= 1");
  if (s.qubits > 15) fail("qubits must be <= 15");
  if (s.qubits > kMaxUnforcedQubits && !s.force) {
    throw Error(errc::kResourceGuard, "n = " + std::to_string(s.qubits) +
                                          " needs a 4^n x 4^n frame; pass --force to run");
  }
  if (s.trials < 1) fail("trials must be >= 1");
  if (s.m_grid.empty() || s.l_grid.empty() || s.mu_grid.empty() || s.eta_grid.empty()) {
    fail("all grids must be nonempty");
  }
  for (int m : s.m_grid) {
    if (m < 1) fail("M-grid entries must be >= 1");
  }
  for (auto l : s.l_grid) {
    if (l < 1) fail("L-grid entries must be >= 1");
  }
  for (double mu : s.mu_grid) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) fail("mu must be finite and >= 0");
  }
  for (double eta : s.eta_grid) {
    if (!(eta >= 0.0 && eta <= 1.0)) fail("eta must lie in [0, 1]");
  }
  if (s.random_observables < 1) fail("random observable count must be >= 1");
  if (!(s.rcond > 0.0 && s.rcond < 1.0)) fail("rcond must lie in (0, 1)");
  if (s.kind == ScenarioKind::kMultishot) {
    for (int copies : s.m_grid) {
      for (auto l : s.l_grid) {
        if (copies % l != 0) {
          fail("multishot copies " + std::to_string(copies) + " not divisible by L = " +
               std::to_string(l));
        }
      }
    }
  }
  if (s.kind == ScenarioKind::kTheorem1Check) {
    const auto samples = s.ensemble_samples > 0 ? s.ensemble_samples : s.trials;
    if (samples < 2) fail("theorem1 needs at least 2 ensemble samples");
  }
  if (s.fixed_unitaries) {
    if (s.kind == ScenarioKind::kMismatch || s.kind == ScenarioKind::kTheorem1Check) {
      fail("fixed ensembles cannot be used with " + std::string(to_string(s.kind)));
    }
    validate(EnsembleSpec{Fixed{*s.fixed_unitaries}});
    if (s.fixed_unitaries->front().rows() != (1 << s.qubits)) {
      fail("fixed ensemble dimension does not match 2^qubits");
    }
  }
}

bool operator==(const ResultRow& a, const ResultRow& b) {
  return std::tie(a.scenario, a.trial, a.settings, a.shots, a.mu, a.eta, a.method, a.metric,
                  a.value) == std::tie(b.scenario, b.trial, b.settings, b.shots, b.mu, b.eta,
                                       b.method, b.metric, b.value);
}

CanonicalProblem canonical_state_and_observables(int qubits) {
  if (qubits < 1 || qubits > 15) throw Error(errc::kInvalidArgument, "qubits must be in [1, 15]");
  const int d = 1 << qubits;
  Vector phi0 = Vector::Zero(d);
  phi0(0) = 1.0;
  Vector phi1 = Vector::Constant(d, 1.0 / std::sqrt(2.0 * (d - 1)));
  phi1(0) = 1.0 / std::sqrt(2.0);
  Vector phi2 = Vector::Zero(d);
  phi2(1) = 1.0;
  // Absorb rounding in the norm of phi1.
  phi1 /= phi1.norm();
  return CanonicalProblem{
      DensityMatrix::basis_state(d, 0),
      {Observable::rank_one(phi0), Observable::rank_one(phi1), Observable::rank_one(phi2)},
      {1.0, 0.5, 0.0}};
}

std::vector<ResultRow> run_scenario(const Scenario& scenario, const RunOptions& options) {
  validate(scenario);
  const int dim = 1 << scenario.qubits;
  int trials = scenario.trials;
  if (options.load_records || options.dump_records) {
    if (!single_plan(scenario.kind)) {
      throw Error(errc::kInvalidArgument,
                  "record dump/load is only supported for double-descent, mu-sweep, "
                  "rls-vs-cs and random-obs");
    }
  }
  if (options.load_records) {
    if (options.load_records->empty()) throw Error(errc::kEmptyInput, "no record sets loaded");
    for (const auto& set : *options.load_records) {
      if (set.dim != dim) throw Error(errc::kDimMismatch, "loaded records have wrong D");
    }
    trials = static_cast<int>(options.load_records->size());
  }

  Context ctx{scenario, dim, canonical_state_and_observables(scenario.qubits), {},
              options.load_records};
  for (std::size_t i = 0; i < ctx.problem.observables.size(); ++i) {
    ctx.observables.push_back(
        NamedObservable{std::to_string(i), ctx.problem.observables[i], ctx.problem.truths[i]});
  }
  if (scenario.kind == ScenarioKind::kRandomObservables) {
    // Shared by every trial.
    for (int j = 0; j < scenario.random_observables; ++j) {
      RngStream rng(scenario.seed, 0, static_cast<std::uint64_t>(j), Lane::kObservables);
      Observable obs = Observable::rank_one(sample_haar_vector(dim, rng));
      const double truth = expectation(obs, ctx.problem.state);
      ctx.observables.push_back(NamedObservable{"r" + std::to_string(j), std::move(obs), truth});
    }
  }

  std::vector<TrialOutput> outputs = run_trials(ctx, trials, options.workers);
  std::vector<ResultRow> rows;
  for (auto& o : outputs) {
    rows.insert(rows.end(), std::make_move_iterator(o.rows.begin()),
                std::make_move_iterator(o.rows.end()));
    if (options.dump_records && o.records) options.dump_records->push_back(std::move(*o.records));
  }
  std::vector<ResultRow> summary;
  aggregate(ctx, rows, summary);
  if (scenario.kind == ScenarioKind::kTheorem1Check) theorem_rows(ctx, summary);
  if (scenario.kind == ScenarioKind::kRandomObservables) {
    const std::string name(to_string(scenario.kind));
    for (const auto& named : ctx.observables) {
      summary.push_back(ResultRow{name, -1, 0, 0, 0.0, 0.0, "truth",
                                  "lambda-true-" + named.suffix, named.truth});
    }
  }
  rows.insert(rows.end(), summary.begin(), summary.end());
  sort_rows(rows);
  return rows;
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.trial, a.settings, a.shots, a.method, a.metric, a.mu, a.eta, a.scenario) <
           std::tie(b.trial, b.settings, b.shots, b.method, b.metric, b.mu, b.eta, b.scenario);
  });
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  std::vector<ResultRow> sorted(rows.begin(), rows.end());
  sort_rows(sorted);
  out << kCsvHeader << '\n';
  for (const auto& r : sorted) {
    if (!std::isfinite(r.value)) {
      throw Error(errc::kInvalidArgument, "non-finite value for metric " + r.metric);
    }
    out << r.scenario << ',' << r.trial << ',' << r.settings << ',' << r.shots << ','
        << format_double(r.mu) << ',' << format_double(r.eta) << ',' << r.method << ','
        << r.metric << ',' << format_double(r.value) << '\n';
  }
}

void emit_csv(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::kIo, "cannot open " + path.string() + " for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw Error(errc::kIo, "write failed for " + path.string());
}

}  // namespace shadowtomo
