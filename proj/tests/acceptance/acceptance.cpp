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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Seeds are fixed; tolerances are the pinned ones.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "shadowtomo/ensembles.hpp"
#include "shadowtomo/estimators.hpp"
#include "shadowtomo/experiments.hpp"
#include "shadowtomo/measurement.hpp"
#include "shadowtomo/quantum.hpp"
#include "shadowtomo/theory.hpp"

using namespace shadowtomo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Looks up aggregate rows by (M, L, mu, eta, method, metric).
class AggregateTable {
 public:
  explicit AggregateTable(const std::vector<ResultRow>& rows) {
    for (const auto& r : rows) {
      if (r.trial == -1) table_[{r.settings, r.shots, r.mu, r.eta, r.method, r.metric}] = r.value;
    }
  }
  MseEstimate mse(int m, std::int64_t l, double mu, double eta, const std::string& method,
                  const std::string& suffix) const {
    MseEstimate out;
    out.value = table_.at({m, l, mu, eta, method, "mse-" + suffix});
    out.std_error = table_.at({m, l, mu, eta, method, "mse-se-" + suffix});
    return out;
  }

 private:
  using Key = std::tuple<int, std::int64_t, double, double, std::string, std::string>;
  std::map<Key, double> table_;
};

double combined(const MseEstimate& a, const MseEstimate& b) {
  return std::hypot(a.std_error, b.std_error);
}

double median_metric(const std::vector<ResultRow>& rows, int m, const std::string& method,
                     const std::string& metric) {
  std::vector<double> v;
  for (const auto& r : rows) {
    if (r.trial >= 0 && r.settings == m && r.method == method && r.metric == metric) {
      v.push_back(r.value);
    }
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 1. Haar average of the measure-and-prepare map equals (rho + tr(rho) I) / (D + 1).
Outcome channel_identity() {
  const auto start = Clock::now();
  constexpr int kDim = 4;
  constexpr int kSamples = 100000;
  RngStream srng(101, 0, 0, Lane::kObservables);
  const Matrix rho = sample_random_state(kDim, srng).matrix();
  std::vector<std::vector<double>> parts(2 * kDim * kDim);
  for (int s = 0; s < kSamples; ++s) {
    RngStream rng(101, 1, static_cast<std::uint64_t>(s));
    const Matrix u = sample_global_haar(kDim, rng);
    Matrix acc = Matrix::Zero(kDim, kDim);
    for (int k = 0; k < kDim; ++k) {
      const Vector uk = u.row(k).adjoint();
      const double p = (uk.adjoint() * rho * uk)(0, 0).real();
      acc += p * uk * uk.adjoint();
    }
    for (int i = 0; i < kDim * kDim; ++i) {
      parts[static_cast<std::size_t>(2 * i)].push_back(acc(i / kDim, i % kDim).real());
      parts[static_cast<std::size_t>(2 * i + 1)].push_back(acc(i / kDim, i % kDim).imag());
    }
  }
  const Matrix want = (rho + Matrix::Identity(kDim, kDim)) / (kDim + 1.0);
  double worst_sigma = 0.0;
  for (int i = 0; i < kDim * kDim; ++i) {
    const auto re = oracle::mean_se(parts[static_cast<std::size_t>(2 * i)]);
    const auto im = oracle::mean_se(parts[static_cast<std::size_t>(2 * i + 1)]);
    const Complex target = want(i / kDim, i % kDim);
    auto sigma = [](double diff, double se) { return se > 0 ? diff / se : (diff > 1e-15 ? 1e9 : 0.0); };
    worst_sigma = std::max(worst_sigma, sigma(std::abs(re.mean - target.real()), re.se));
    worst_sigma = std::max(worst_sigma, sigma(std::abs(im.mean - target.imag()), im.se));
  }
  const double t = seconds_since(start);
  return {worst_sigma <= 3.0 && t < 60.0,
          fmt("worst entry %.2f SE (limit 3), %.1f s (limit 60)", worst_sigma, t)};
}

// 2. Single-shot CS shadows at D=32: trace 1 and spectrum {32, -1 x 31}.
Outcome cs_structure() {
  const auto start = Clock::now();
  const auto recs = run_plan(DensityMatrix::basis_state(32, 0), MeasurementPlan{1000, 1, GlobalHaar{32}},
                             RngStream(202, 0, 0));
  double trace_err = 0.0;
  double spec_err = 0.0;
  for (const auto& rec : recs) {
    const Matrix s = cs_shadow(rec).matrix;
    trace_err = std::max(trace_err, std::abs(s.trace() - Complex(1.0, 0.0)));
    const RealVector ev = hermitian_eigenvalues(s);
    spec_err = std::max(spec_err, std::abs(ev(31) - 32.0));
    spec_err = std::max(spec_err, (ev.head(31).array() + 1.0).abs().maxCoeff());
  }
  const double t = seconds_since(start);
  return {trace_err <= 1e-10 && spec_err <= 1e-9 && t < 30.0,
          fmt("trace err %.2e (1e-10), spectrum err %.2e (1e-9), %.1f s", trace_err, spec_err,
              t)};
}

// 3. CS estimates of the three canonical observables are unbiased.
Outcome cs_unbiased() {
  const auto start = Clock::now();
  const auto canon = canonical_state_and_observables(2);
  std::array<std::vector<double>, 3> est;
  for (int t = 0; t < 10000; ++t) {
    const auto recs = run_plan(canon.state, MeasurementPlan{8, 1, GlobalHaar{4}},
                               RngStream(303, static_cast<std::uint64_t>(t), 0));
    const ShadowEstimate avg = estimate_average(recs, ClassicalShadow{});
    for (std::size_t i = 0; i < 3; ++i) est[i].push_back(expectation(canon.observables[i], avg));
  }
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto s = oracle::mean_se(est[i]);
    const double z = std::abs(s.mean - canon.truths[i]) / s.se;
    ok = ok && z < 3.0;
    detail += fmt("lambda%zu %.4f (truth %.1f, %.2f SE); ", i, s.mean, canon.truths[i], z);
  }
  const double t = seconds_since(start);
  ok = ok && t < 120.0;
  return {ok, detail + fmt("%.1f s", t)};
}

// 4. LS estimates are Hermitian with unit trace when M*K <= D^2.
Outcome ls_trace_one() {
  double herm = 0.0;
  double trace = 0.0;
  for (int r = 0; r < 100; ++r) {
    const int dim = r % 2 == 0 ? 4 : 8;
    const int m = 1 + (r / 2) % dim;  // M*K <= D^2 with K = D
    RngStream srng(404, static_cast<std::uint64_t>(r), 0, Lane::kObservables);
    const DensityMatrix rho = sample_random_state(dim, srng);
    const auto recs = run_plan(rho, MeasurementPlan{m, 1 + r % 5, GlobalHaar{dim}},
                               RngStream(404, static_cast<std::uint64_t>(r), 0));
    const Matrix ls = estimate_average(recs, LeastSquares{}).matrix;
    herm = std::max(herm, hermiticity_defect(ls));
    trace = std::max(trace, std::abs(ls.trace() - Complex(1.0, 0.0)));
  }
  return {herm <= 1e-10 && trace <= 1e-8,
          fmt("hermiticity %.2e (1e-10), trace err %.2e (1e-8) over 100 runs", herm, trace)};
}

Scenario desk_scenario(ScenarioKind kind) {
  Scenario s = default_scenario(kind);
  s.qubits = 4;
  s.trials = 50;
  s.m_grid = {4, 16, 64};
  s.mu_grid = {0.1};
  s.seed = 505;
  return s;
}

// 5. LS error peaks at the interpolation point M = D.
Outcome double_descent(std::vector<ResultRow>& ls_rows) {
  const auto start = Clock::now();
  ls_rows = run_scenario(desk_scenario(ScenarioKind::kDoubleDescent));
  const double m4 = median_metric(ls_rows, 4, "LS", "frobenius-error");
  const double m16 = median_metric(ls_rows, 16, "LS", "frobenius-error");
  const double m64 = median_metric(ls_rows, 64, "LS", "frobenius-error");
  const double t = seconds_since(start);
  return {m16 > m4 && m16 > m64 && t < 300.0,
          fmt("median LS error M=4 %.3f, M=16 %.3f, M=64 %.3f, %.1f s", m4, m16, m64, t)};
}

// 6. A small ridge term tames the interpolation peak.
Outcome rls_stabilises(const std::vector<ResultRow>& ls_rows) {
  const auto rows = run_scenario(desk_scenario(ScenarioKind::kMuSweep));
  const double ls = median_metric(ls_rows, 16, "LS", "frobenius-error");
  const double rls = median_metric(rows, 16, "RLS", "frobenius-error");
  return {rls < 0.5 * ls, fmt("median error at M=D: RLS %.3f vs LS %.3f (need < half)", rls, ls)};
}

// 7. Simulated CS MSE agrees with the multishot MSE formula.
Outcome theorem_check() {
  const auto start = Clock::now();
  Scenario s = default_scenario(ScenarioKind::kTheorem1Check);
  s.qubits = 2;
  s.trials = 10000;
  s.ensemble_samples = 10000;
  s.m_grid = {16};
  s.l_grid = {1, 4, 16};
  s.seed = 707;
  const AggregateTable table(run_scenario(s));
  bool ok = true;
  std::string detail;
  for (std::int64_t l : s.l_grid) {
    const auto emp = table.mse(16, l, 0.0, 0.0, "CS", "0");
    const auto thy = table.mse(16, l, 0.0, 0.0, "theorem1", "0");
    const double z = std::abs(emp.value - thy.value) / combined(emp, thy);
    ok = ok && z < 3.0;
    detail += fmt("L=%lld sim %.4f formula %.4f (%.2f SE); ", static_cast<long long>(l),
                  emp.value, thy.value, z);
  }
  const double t = seconds_since(start);
  return {ok && t < 600.0, detail + fmt("%.1f s", t)};
}

// 8. Multishot: more shots per setting hurts at fixed copies; L=1 scales as 1/(ML).
Outcome multishot() {
  const auto start = Clock::now();
  Scenario s = default_scenario(ScenarioKind::kMultishot);
  s.qubits = 3;
  s.trials = 200;
  s.m_grid = {64, 128, 256, 512, 1024, 2048, 4096};
  s.l_grid = {1, 64};
  s.seed = 808;
  const AggregateTable table(run_scenario(s));
  const auto l1 = table.mse(4096, 1, 0.0, 0.0, "CS", "0");
  const auto l64 = table.mse(4096 / 64, 64, 0.0, 0.0, "CS", "0");
  const double z = (l64.value - l1.value) / combined(l1, l64);

  // Least-squares slope of log MSE against log copies at L = 1.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(s.m_grid.size());
  for (int copies : s.m_grid) {
    const double x = std::log(static_cast<double>(copies));
    const double y = std::log(table.mse(copies, 1, 0.0, 0.0, "CS", "0").value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double t = seconds_since(start);
  return {z > 3.0 && std::abs(slope + 1.0) <= 0.25,
          fmt("ML=4096: L=64 %.3e vs L=1 %.3e (%.2f SE, need > 3); slope %.3f (-1 +/- 0.25); "
              "%.1f s",
              l64.value, l1.value, z, slope, t)};
}

// 9. CS degrades under ensemble mismatch while RLS stays put.
Outcome mismatch() {
  const auto start = Clock::now();
  Scenario s = default_scenario(ScenarioKind::kMismatch);
  s.qubits = 3;
  s.trials = 200;
  s.m_grid = {128};
  s.eta_grid = {0.0, 0.5};
  s.seed = 909;
  const AggregateTable table(run_scenario(s));
  const auto cs0 = table.mse(128, 1, 0.0, 0.0, "CS", "0");
  const auto cs5 = table.mse(128, 1, 0.0, 0.5, "CS", "0");
  const auto r0 = table.mse(128, 1, 0.1, 0.0, "RLS", "0");
  const auto r5 = table.mse(128, 1, 0.1, 0.5, "RLS", "0");
  const double zcs = (cs5.value - cs0.value) / combined(cs0, cs5);
  const double zrls = std::abs(r5.value - r0.value) / combined(r0, r5);
  const double t = seconds_since(start);
  return {zcs > 3.0 && zrls <= 3.0,
          fmt("CS eta 0 %.3e -> 0.5 %.3e (%.2f SE, need > 3); RLS %.3e -> %.3e (%.2f SE, need "
              "<= 3); %.1f s",
              cs0.value, cs5.value, zcs, r0.value, r5.value, zrls, t)};
}

// 10. Overlaps of Haar-random vectors with e0 follow (D-1)(1-x)^(D-2).
Outcome random_observable_density() {
  constexpr int kDim = 32;
  std::vector<double> xs;
  for (int s = 0; s < 100000; ++s) {
    RngStream r(1010, 0, static_cast<std::uint64_t>(s), Lane::kObservables);
    xs.push_back(std::norm(sample_haar_vector(kDim, r)(0)));
  }
  const double p = oracle::ks_pvalue(xs, [](double x) {
    return 1.0 - std::pow(1.0 - std::clamp(x, 0.0, 1.0), kDim - 1.0);
  });
  const auto m = oracle::mean_se(xs);
  const double z = std::abs(m.mean - 1.0 / kDim) / m.se;
  return {p > 0.01 && z < 3.0,
          fmt("KS p = %.3f (> 0.01), mean %.5f vs 1/32 (%.2f SE)", p, m.mean, z)};
}

// 11. Agreement with independent oracles.
Outcome oracle_equivalences() {
  // (a) exact informationally complete LS reconstruction at D = 2.
  std::vector<Matrix> unitaries;
  for (int m = 0; m < 4; ++m) {
    RngStream r(1111, 0, static_cast<std::uint64_t>(m));
    unitaries.push_back(sample_global_haar(2, r));
  }
  RngStream srng(1111, 1, 0);
  const DensityMatrix rho = sample_random_state(2, srng);
  std::vector<RankOnePovm> povms;
  std::vector<RealVector> probs;
  Matrix partial = Matrix::Zero(2, 2);
  for (std::size_t m = 0; m < unitaries.size(); ++m) {
    RngStream idx(0, 0, m);
    povms.push_back(povm_from_unitary(sample_unitary(Fixed{unitaries}, idx).unitary));
    probs.push_back(born_probabilities(povms.back(), rho));
    partial += adjoint_map(povms.back(), probs.back()) / 4.0;
  }
  const Matrix ls = ls_shadow(build_frame_operator(povms), partial).matrix;
  const double ls_err = std::max(frobenius_error(ls, oracle::dense_regression(unitaries, probs, 0.0)),
                                 frobenius_error(ls, rho.matrix()));

  // (b) physical projection against a Bloch-ball search.
  double proj_err = 0.0;
  for (unsigned i = 0; i < 1000; ++i) {
    Matrix h = oracle::random_hermitian(2, 5000 + i);
    const double target_trace = 0.55 + (i % 91) / 100.0;  // inside the projection domain
    h += Matrix::Identity(2, 2) * ((target_trace - h.trace().real()) / 2.0);
    proj_err = std::max(proj_err,
                        frobenius_error(project_physical(h).matrix(), oracle::bloch_projection(h)));
  }

  // (c) multishot records versus duplicated single-shot records.
  constexpr std::int64_t kShots = 32;
  const auto recs = run_plan(DensityMatrix::basis_state(4, 0),
                             MeasurementPlan{6, kShots, GlobalHaar{4}}, RngStream(1111, 2, 0));
  const auto single = expand_to_single_shot(recs);
  double dup_err = 0.0;
  auto compare = [&](const ShadowMethod& a, const ShadowMethod& b) {
    dup_err = std::max(dup_err, frobenius_error(estimate_average(recs, a).matrix,
                                                estimate_average(single, b).matrix));
  };
  compare(ClassicalShadow{}, ClassicalShadow{});
  compare(LeastSquares{}, LeastSquares{});
  compare(RidgeRegression{0.1}, RidgeRegression{0.1 * kShots});

  return {ls_err <= 1e-8 && proj_err <= 1e-6 && dup_err <= 1e-10,
          fmt("IC LS %.2e (1e-8), projection %.2e (1e-6), multishot %.2e (1e-10)", ls_err,
              proj_err, dup_err)};
}

// 12. Byte-identical CSV under 1, 2 and 8 workers for every scenario.
Outcome determinism() {
  std::string failures;
  for (auto kind : {ScenarioKind::kDoubleDescent, ScenarioKind::kMuSweep, ScenarioKind::kRlsVsCs,
                    ScenarioKind::kRandomObservables, ScenarioKind::kMismatch,
                    ScenarioKind::kMultishot, ScenarioKind::kTheorem1Check}) {
    Scenario s = default_scenario(kind);
    s.trials = 12;
    s.seed = 1212;
    if (kind == ScenarioKind::kMultishot) s.m_grid = {64, 128, 256};
    if (kind == ScenarioKind::kTheorem1Check) s.trials = 200;
    if (kind == ScenarioKind::kRandomObservables) s.random_observables = 10;
    std::string reference;
    for (int workers : {1, 2, 8}) {
      std::ostringstream out;
      write_csv(out, run_scenario(s, RunOptions{workers}));
      if (workers == 1) {
        reference = out.str();
      } else if (out.str() != reference) {
        failures += std::string(to_string(kind)) + fmt("@%d ", workers);
      }
    }
  }
  return {failures.empty(),
          failures.empty() ? "7 scenarios identical at 1/2/8 workers" : "differs: " + failures};
}

}  // namespace

int main() {
  std::vector<ResultRow> ls_rows;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"channel identity", channel_identity},
      {"CS shadow structure", cs_structure},
      {"CS unbiasedness", cs_unbiased},
      {"LS Hermitian with unit trace", ls_trace_one},
      {"double descent", [&] { return double_descent(ls_rows); }},
      {"RLS stabilization", [&] { return rls_stabilises(ls_rows); }},
      {"MSE formula cross-check", theorem_check},
      {"multishot degradation", multishot},
      {"distribution mismatch", mismatch},
      {"random-observable density", random_observable_density},
      {"oracle equivalences", oracle_equivalences},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %-30s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
