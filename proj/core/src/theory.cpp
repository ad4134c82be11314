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

#include "shadowtomo/theory.hpp"

#include <cmath>
#include <vector>

namespace shadowtomo {

MultinomialMoments multinomial_moments(const RealVector& p, std::int64_t shots) {
  if (shots < 1) throw Error(errc::kInvalidArgument, "shots must be >= 1");
  const double l = static_cast<double>(shots);
  MultinomialMoments out;
  out.second = (p.array() + (l - 1.0) * p.array().square()) / l;
  out.cross = (1.0 - 1.0 / l) * (p * p.transpose());
  out.cross.diagonal() = out.second;
  return out;
}

MseEstimate mse_theorem1(const DensityMatrix& state, const Observable& obs,
                         const EnsembleSpec& spec, int settings, std::int64_t shots,
                         std::int64_t ensemble_samples, const RngStream& base) {
  const auto* haar = std::get_if<GlobalHaar>(&spec);
  if (haar == nullptr) {
    throw Error(errc::kUnsupportedEnsemble,
                "the analytic channel inverse is only valid for global Haar");
  }
  if (ensemble_samples < 2) {
    throw Error(errc::kInvalidArgument, "need at least 2 ensemble samples");
  }
  if (settings < 1 || shots < 1) {
    throw Error(errc::kInvalidArgument, "M and L must be >= 1");
  }
  const int d = haar->dim;
  if (state.dim() != d || obs.dim() != d) {
    throw Error(errc::kDimMismatch, "state, observable and ensemble dimensions differ");
  }
  const double m = settings;
  const double l = static_cast<double>(shots);
  const double lambda = expectation(obs, state);
  const double obs_trace = obs.matrix().trace().real();

  std::vector<double> per_draw;
  per_draw.reserve(static_cast<std::size_t>(ensemble_samples));
  for (std::int64_t s = 0; s < ensemble_samples; ++s) {
    RngStream rng = base.at(static_cast<std::uint64_t>(s)).fork(Lane::kTheory);
    const RankOnePovm povm = povm_from_unitary(sample_global_haar(d, rng));
    const RealVector p = born_probabilities(povm, state);
    // t_k = tr(obs M^{-1}(u_k u_k^dagger)) = (D + 1) u_k^dagger obs u_k - tr(obs)
    const Matrix& u = povm.unitary();
    const Matrix rotated = u * obs.matrix();
    double diagonal = 0.0;
    double weighted = 0.0;
    double weighted_sq = 0.0;
    for (int k = 0; k < d; ++k) {
      const double quad = (rotated.row(k) * u.row(k).adjoint())(0, 0).real();
      const double t = (d + 1.0) * quad - obs_trace;
      const double pk = p(k);
      diagonal += (pk + (l - 1.0) * pk * pk) * t * t;
      weighted += pk * t;
      weighted_sq += pk * pk * t * t;
    }
    const double off_diagonal = weighted * weighted - weighted_sq;
    per_draw.push_back(diagonal / (m * l) + (1.0 - 1.0 / l) / m * off_diagonal -
                       lambda * lambda / m);
  }
  return sample_mean(per_draw);
}

double random_observable_pdf(double lambda, int dim) {
  if (dim < 2) throw Error(errc::kInvalidArgument, "D must be >= 2");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(errc::kInvalidArgument, "lambda must lie in [0, 1]");
  }
  return (dim - 1.0) * std::pow(1.0 - lambda, dim - 2);
}

double random_observable_cdf(double lambda, int dim) {
  if (dim < 2) throw Error(errc::kInvalidArgument, "D must be >= 2");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(errc::kInvalidArgument, "lambda must lie in [0, 1]");
  }
  return 1.0 - std::pow(1.0 - lambda, dim - 1);
}

MseEstimate sample_mean(std::span<const double> samples) {
  if (samples.size() < 2) throw Error(errc::kInvalidArgument, "need at least 2 samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double variance = ss / (n - 1.0);
  return MseEstimate{mean, std::sqrt(variance / n), static_cast<std::int64_t>(samples.size())};
}

MseEstimate empirical_mse(std::span<const double> estimates, double truth) {
  if (estimates.size() < 2) throw Error(errc::kInvalidArgument, "need at least 2 estimates");
  std::vector<double> squared;
  squared.reserve(estimates.size());
  for (double x : estimates) squared.push_back((x - truth) * (x - truth));
  return sample_mean(squared);
}

}  // namespace shadowtomo
