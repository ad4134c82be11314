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

// Reference implementations used only by the tests. They deliberately avoid
// the library's own algorithms so agreement is meaningful.

#ifndef SHADOWTOMO_TESTS_ORACLES_HPP
#define SHADOWTOMO_TESTS_ORACLES_HPP

#include <functional>
#include <span>
#include <vector>

#include "shadowtomo/types.hpp"

namespace shadowtomo::oracle {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// One-sample KS test p-value against a continuous CDF.
double ks_pvalue(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS test p-value.
double ks_pvalue(std::vector<double> a, std::vector<double> b);

/// Orthonormal (Frobenius) basis of D x D Hermitian matrices, D^2 elements.
std::vector<Matrix> hermitian_basis(int dim);

/// Closest 2x2 density matrix to h / tr(h), found by direct search over the
/// Bloch ball.
Matrix bloch_projection(const Matrix& h);

/// Ridge (mu > 0) or minimum-norm (mu == 0) solution of
///   min_X sum_{m,k} (<u_mk, X u_mk> - phat_mk)^2 + mu ||X||_F^2
/// over Hermitian X, solved in a real Hermitian basis. Unitary rows are u^dagger.
Matrix dense_regression(std::span<const Matrix> unitaries,
                        std::span<const RealVector> frequencies, double mu);

/// Random Hermitian matrix with i.i.d. Gaussian entries, seeded.
Matrix random_hermitian(int dim, unsigned seed);

}  // namespace shadowtomo::oracle

#endif  // SHADOWTOMO_TESTS_ORACLES_HPP
