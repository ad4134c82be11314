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

#ifndef SHADOWTOMO_ESTIMATORS_HPP
#define SHADOWTOMO_ESTIMATORS_HPP

#include <span>
#include <variant>
#include <vector>

#include "shadowtomo/measurement.hpp"
#include "shadowtomo/quantum.hpp"
#include "shadowtomo/types.hpp"

namespace shadowtomo {

inline constexpr double kDefaultRcond = 1e-10;
inline constexpr double kDefaultMu = 0.1;

/// Column-major vectorization, so <A, X> = vec(A)^dagger vec(X).
Vector vectorize(const Matrix& x);
Matrix unvectorize(const Vector& v, int dim);

/// (1/M) sum_{m,k} vec(A_mk) vec(A_mk)^dagger as an explicit D^2 x D^2
/// Hermitian matrix.
class FrameOperator {
 public:
  /// Throws `empty-input` for an empty list and `dim-mismatch` for mixed
  /// dimensions.
  static FrameOperator build(std::span<const RankOnePovm> povms);
  static FrameOperator build(std::span<const MeasurementRecord> records);

  int dim() const noexcept { return dim_; }
  int settings() const noexcept { return settings_; }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  FrameOperator(int dim, int settings, Matrix matrix)
      : dim_(dim), settings_(settings), matrix_(std::move(matrix)) {}
  int dim_;
  int settings_;
  Matrix matrix_;
};

FrameOperator build_frame_operator(std::span<const RankOnePovm> povms);

/// D^2 x D^2 matrix of the global-Haar channel X -> (X + tr(X) I) / (D + 1).
Matrix channel_matrix(int dim);

struct LeastSquares {
  double rcond = kDefaultRcond;
};
struct RidgeRegression {
  double mu = kDefaultMu;
};
/// Analytic inverse of the global-Haar channel.
struct ClassicalShadow {};

using ShadowMethod = std::variant<LeastSquares, RidgeRegression, ClassicalShadow>;

Method method_of(const ShadowMethod& method);

/// Pseudoinverse of the frame from one Hermitian eigendecomposition.
/// Eigenvalues at or below rcond * lambda_max are discarded.
class LsSolver {
 public:
  LsSolver(const FrameOperator& frame, double rcond = kDefaultRcond);

  int rank() const noexcept { return static_cast<int>(inverse_eigenvalues_.size()); }
  double cutoff() const noexcept { return cutoff_; }
  /// Eigenvalues of the frame, ascending.
  const RealVector& spectrum() const noexcept { return spectrum_; }

  /// pinv(frame) applied to each column.
  Matrix apply_columns(const Matrix& columns) const;
  Matrix apply(const Matrix& partial) const;

 private:
  int dim_;
  double cutoff_ = 0.0;
  RealVector spectrum_;
  Matrix kept_vectors_;
  RealVector inverse_eigenvalues_;
};

/// Cholesky factorization of frame + (mu / M) I, i.e. (A^dagger A + mu I) / M.
class RlsSolver {
 public:
  /// Throws `singular-frame` when mu == 0 and the frame is not invertible.
  RlsSolver(const FrameOperator& frame, double mu = kDefaultMu);

  Matrix apply_columns(const Matrix& columns) const;
  Matrix apply(const Matrix& partial) const;

 private:
  int dim_;
  Eigen::LLT<Matrix> llt_;
};

ShadowEstimate ls_shadow(const FrameOperator& frame, const Matrix& partial,
                         double rcond = kDefaultRcond);
ShadowEstimate rls_shadow(const FrameOperator& frame, double mu, const Matrix& partial);

/// X / (D + 1) + tr(X) I / (D + 1)
Matrix cs_channel_apply(const Matrix& op);
/// (D + 1) X - tr(X) I
Matrix cs_channel_inverse(const Matrix& op);

/// Channel inverse of the record's adjoint map: (D + 1) U^dagger diag(phat) U - I.
ShadowEstimate cs_shadow(const MeasurementRecord& rec);

struct ShadowSet {
  std::vector<ShadowEstimate> shadows;
  ShadowEstimate average;
};

/// Per-record shadows and their mean. LS and RLS build one frame from the
/// records and reuse its factorization for every shadow.
ShadowSet estimate(std::span<const MeasurementRecord> records, const ShadowMethod& method);

/// Mean shadow only. Every method is linear in the adjoint maps, so this
/// applies the inversion once to the mean adjoint map.
ShadowEstimate estimate_average(std::span<const MeasurementRecord> records,
                                const ShadowMethod& method);

/// Mean of the records' adjoint maps, (1/M) sum_m A_m^dagger(phat_m).
Matrix mean_adjoint(std::span<const MeasurementRecord> records);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_ESTIMATORS_HPP
