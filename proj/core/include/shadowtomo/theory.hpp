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

#ifndef SHADOWTOMO_THEORY_HPP
#define SHADOWTOMO_THEORY_HPP

#include <cstdint>
#include <span>

#include "shadowtomo/ensembles.hpp"
#include "shadowtomo/quantum.hpp"
#include "shadowtomo/rng.hpp"

namespace shadowtomo {

/// A Monte Carlo mean with its standard error.
struct MseEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Conditional moments of multinomial frequencies phat = f / L.
struct MultinomialMoments {
  RealVector second;        ///< E[phat_k^2] = (p_k + (L - 1) p_k^2) / L
  Eigen::MatrixXd cross;    ///< E[phat_k phat_k'] = (1 - 1/L) p_k p_k' off the diagonal
};

MultinomialMoments multinomial_moments(const RealVector& p, std::int64_t shots);

/// Closed-form MSE of the classical-shadow estimate of tr(obs rho) with M
/// global-Haar settings and L shots each. The expectation over the POVM is
/// taken by Monte Carlo over `ensemble_samples` Haar unitaries drawn from
/// `base.at(s)`; per draw, with t_k = tr(obs M^{-1}(A_k)),
///
///   sum_k (p_k + (L-1) p_k^2) t_k^2 / (M L)
///     + (1 - 1/L) / M * [ (sum_k p_k t_k)^2 - sum_k p_k^2 t_k^2 ]
///     - tr(obs rho)^2 / M.
///
/// Only GlobalHaar specs are accepted (`unsupported-ensemble` otherwise).
MseEstimate mse_theorem1(const DensityMatrix& state, const Observable& obs,
                         const EnsembleSpec& spec, int settings, std::int64_t shots,
                         std::int64_t ensemble_samples, const RngStream& base);

/// (D - 1)(1 - lambda)^(D - 2), the density of |phi^dagger e_0|^2 for a
/// Haar-random unit vector phi.
double random_observable_pdf(double lambda, int dim);
/// Matching CDF, 1 - (1 - lambda)^(D - 1).
double random_observable_cdf(double lambda, int dim);

/// Mean squared deviation from `truth` and the standard error of that mean.
MseEstimate empirical_mse(std::span<const double> estimates, double truth);

/// Mean and standard error of arbitrary samples.
MseEstimate sample_mean(std::span<const double> samples);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_THEORY_HPP
