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

#include "shadowtomo/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "shadowtomo/ensembles.hpp"
#include "shadowtomo/estimators.hpp"
#include "shadowtomo/experiments.hpp"
#include "shadowtomo/measurement.hpp"
#include "shadowtomo/theory.hpp"

namespace shadowtomo {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome bounded(double worst, double tolerance) {
  std::ostringstream ss;
  ss << "worst " << worst << " (tol " << tolerance << ")";
  return {worst <= tolerance, ss.str()};
}

Matrix random_hermitian(int dim, RngStream& rng) {
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  return (g + g.adjoint()) / 2.0;
}

std::vector<MeasurementRecord> haar_records(int dim, int settings, std::int64_t shots,
                                            std::uint64_t seed, std::uint64_t trial) {
  RngStream state_rng(seed, trial, 0, Lane::kObservables);
  const DensityMatrix rho = sample_random_state(dim, state_rng);
  return run_plan(rho, MeasurementPlan{settings, shots, GlobalHaar{dim}},
                  RngStream(seed, trial, 0));
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(std::uint64_t seed) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> checks;

  checks.emplace_back("born probabilities are a distribution", [seed] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      RngStream rng(seed, 1, static_cast<std::uint64_t>(t));
      const DensityMatrix rho = sample_random_state(8, rng);
      const RealVector p =
          born_probabilities(povm_from_unitary(sample_global_haar(8, rng)), rho);
      worst = std::max({worst, std::abs(p.sum() - 1.0), std::max(0.0, -p.minCoeff())});
    }
    return bounded(worst, 1e-10);
  });

  checks.emplace_back("project_physical is idempotent", [seed] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      RngStream rng(seed, 2, static_cast<std::uint64_t>(t));
      Matrix h = random_hermitian(4, rng) * 0.3;
      h.diagonal().array() += (1.0 - h.trace().real()) / 4.0;
      const DensityMatrix once = project_physical(h);
      const DensityMatrix twice = project_physical(once.matrix());
      worst = std::max(worst, frobenius_error(once.matrix(), twice.matrix()));
    }
    return bounded(worst, 1e-10);
  });

  checks.emplace_back("eigenvalue split sums to trace", [seed] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      RngStream rng(seed, 3, static_cast<std::uint64_t>(t));
      const Matrix h = random_hermitian(6, rng);
      const EigenvalueSplit s = eigenvalue_split(h);
      worst = std::max(worst, std::abs(s.positive + s.negative - h.trace().real()));
    }
    return bounded(worst, 1e-9);
  });

  checks.emplace_back("sampled unitaries are unitary", [seed] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      RngStream rng(seed, 4, static_cast<std::uint64_t>(t));
      worst = std::max(worst, unitarity_defect(sample_global_haar(16, rng)));
      worst = std::max(worst, unitarity_defect(sample_local_haar_tensor(4, rng)));
    }
    return bounded(worst, 1e-10);
  });

  checks.emplace_back("streams are reproducible", [seed] {
    RngStream a(seed, 7, 11);
    RngStream b(seed, 7, 11);
    const Matrix ua = sample_global_haar(8, a);
    const Matrix ub = sample_global_haar(8, b);
    return Outcome{ua == ub, ua == ub ? "bitwise equal" : "differs"};
  });

  checks.emplace_back("adjoint map one-hot path matches", [seed] {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      RngStream rng(seed, 5, static_cast<std::uint64_t>(t));
      const RankOnePovm povm = povm_from_unitary(sample_global_haar(8, rng));
      const int k = t % 8;
      RealVector onehot = RealVector::Zero(8);
      onehot(k) = 1.0;
      worst = std::max(worst, frobenius_error(adjoint_map(povm, onehot),
                                              adjoint_map_one_hot(povm, k)));
    }
    return bounded(worst, 1e-12);
  });

  checks.emplace_back("CS shadows have trace 1 and spectrum {D, -1}", [seed] {
    const auto records = haar_records(8, 20, 1, seed, 6);
    double worst = 0.0;
    for (const auto& rec : records) {
      const ShadowEstimate s = cs_shadow(rec);
      RealVector eig = hermitian_eigenvalues(s.matrix);
      worst = std::max(worst, std::abs(s.matrix.trace().real() - 1.0));
      worst = std::max(worst, std::abs(eig(7) - 8.0));
      for (int i = 0; i < 7; ++i) worst = std::max(worst, std::abs(eig(i) + 1.0));
    }
    return bounded(worst, 1e-9);
  });

  checks.emplace_back("channel inverse undoes channel", [seed] {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      RngStream rng(seed, 8, static_cast<std::uint64_t>(t));
      const Matrix h = random_hermitian(4, rng);
      worst = std::max(worst, frobenius_error(cs_channel_inverse(cs_channel_apply(h)), h));
    }
    return bounded(worst, 1e-12);
  });

  checks.emplace_back("RLS norm shrinks with mu", [seed] {
    const auto records = haar_records(4, 6, 1, seed, 9);
    double previous = INFINITY;
    double worst = 0.0;
    for (double mu : {0.01, 0.1, 1.0, 10.0}) {
      const double norm = estimate_average(records, RidgeRegression{mu}).matrix.norm();
      worst = std::max(worst, norm - previous);
      previous = norm;
    }
    return bounded(worst, 1e-10);
  });

  checks.emplace_back("LS equals RLS(mu=0) on invertible frames", [seed] {
    const auto records = haar_records(2, 8, 1, seed, 10);
    const auto ls = estimate(records, LeastSquares{});
    const auto rls = estimate(records, RidgeRegression{0.0});
    return bounded(frobenius_error(ls.average.matrix, rls.average.matrix), 1e-8);
  });

  checks.emplace_back("multishot equals duplicated single shots", [seed] {
    const auto records = haar_records(4, 5, 16, seed, 11);
    const auto expanded = expand_to_single_shot(records);
    double worst = 0.0;
    for (const ShadowMethod& m : {ShadowMethod{ClassicalShadow{}}, ShadowMethod{LeastSquares{}}}) {
      worst = std::max(worst, frobenius_error(estimate(records, m).average.matrix,
                                              estimate(expanded, m).average.matrix));
    }
    // The ridge term is mu / M, so the L-fold duplicated problem needs mu * L.
    worst = std::max(worst,
                     frobenius_error(estimate(records, RidgeRegression{0.1}).average.matrix,
                                     estimate(expanded, RidgeRegression{1.6}).average.matrix));
    return bounded(worst, 1e-10);
  });

  checks.emplace_back("multinomial second moments", [] {
    RealVector p(4);
    p << 0.1, 0.2, 0.3, 0.4;
    const auto mom = multinomial_moments(p, 7);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst,
                       std::abs(mom.second(k) - p(k) * p(k) - p(k) * (1 - p(k)) / 7.0));
    }
    return bounded(worst, 1e-15);
  });

  checks.emplace_back("mismatch at eta=0 reproduces rls-vs-cs", [seed] {
    Scenario base = default_scenario(ScenarioKind::kRlsVsCs);
    base.qubits = 2;
    base.trials = 3;
    base.m_grid = {4, 8};
    base.seed = seed;
    Scenario shifted = base;
    shifted.kind = ScenarioKind::kMismatch;
    shifted.eta_grid = {0.0};
    const auto a = run_scenario(base);
    const auto b = run_scenario(shifted);
    double worst = 0.0;
    std::size_t compared = 0;
    for (const auto& ra : a) {
      if (ra.trial < 0) continue;
      for (const auto& rb : b) {
        if (rb.trial == ra.trial && rb.settings == ra.settings && rb.method == ra.method &&
            rb.metric == ra.metric) {
          worst = std::max(worst, std::abs(ra.value - rb.value));
          ++compared;
        }
      }
    }
    if (compared == 0) return Outcome{false, "no rows compared"};
    return bounded(worst, 1e-12);
  });

  checks.emplace_back("rows independent of worker count", [seed] {
    Scenario s = default_scenario(ScenarioKind::kRlsVsCs);
    s.qubits = 2;
    s.trials = 6;
    s.m_grid = {2, 8};
    s.seed = seed;
    const auto serial = run_scenario(s, RunOptions{1});
    const auto parallel = run_scenario(s, RunOptions{3});
    return Outcome{serial == parallel, serial == parallel ? "identical" : "differs"};
  });

  std::vector<CheckResult> results;
  for (auto& [name, fn] : checks) {
    try {
      Outcome o = fn();
      results.push_back(CheckResult{name, o.passed, o.detail});
    } catch (const std::exception& e) {
      results.push_back(CheckResult{name, false, std::string("threw: ") + e.what()});
    }
  }
  return results;
}

}  // namespace shadowtomo
