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

#ifndef SHADOWTOMO_QUANTUM_HPP
#define SHADOWTOMO_QUANTUM_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "shadowtomo/types.hpp"

namespace shadowtomo {

struct MeasurementRecord;

/// Hermitian, positive semidefinite, unit-trace D x D matrix.
class DensityMatrix {
 public:
  /// Validates the state invariants and throws `invalid-argument` on failure.
  static DensityMatrix from_matrix(Matrix entries);
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix basis_state(int dim, int index);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }

 private:
  explicit DensityMatrix(Matrix entries) : entries_(std::move(entries)) {}
  Matrix entries_;
};

enum class Method { kLS, kRLS, kCS };

std::string_view to_string(Method method);

/// Output of a shadow construction. Hermitian, but possibly indefinite.
struct ShadowEstimate {
  Matrix matrix;
  Method method = Method::kCS;

  int dim() const noexcept { return static_cast<int>(matrix.rows()); }
};

/// Hermitian observable; rank-1 observables also keep their unit vector.
class Observable {
 public:
  static Observable from_matrix(Matrix entries);
  /// Builds phi phi^dagger. `phi` must have unit norm.
  static Observable rank_one(Vector phi);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }
  const std::optional<Vector>& vector() const noexcept { return phi_; }

 private:
  Observable(Matrix entries, std::optional<Vector> phi)
      : entries_(std::move(entries)), phi_(std::move(phi)) {}
  Matrix entries_;
  std::optional<Vector> phi_;
};

/// Orthonormal rank-1 POVM. Row k of the unitary is u_k^dagger, so the
/// elements are A_k = u_k u_k^dagger and K = D.
class RankOnePovm {
 public:
  /// Throws `non-unitary` when ||U^dagger U - I||_F exceeds `tolerance`.
  static RankOnePovm from_unitary(Matrix unitary, double tolerance = 1e-8);

  int dim() const noexcept { return static_cast<int>(unitary_.rows()); }
  int outcomes() const noexcept { return dim(); }
  const Matrix& unitary() const noexcept { return unitary_; }

  /// u_k, the conjugated k-th row.
  Vector element_vector(int k) const { return unitary_.row(k).adjoint(); }
  Matrix element(int k) const;

 private:
  explicit RankOnePovm(Matrix unitary) : unitary_(std::move(unitary)) {}
  Matrix unitary_;
};

/// Largest entry of |X - X^dagger|.
double hermiticity_defect(const Matrix& x);

/// p_k = u_k^dagger rho u_k, clipped to [0, 1] and renormalized when the sum
/// drifts from 1 by more than 1e-12.
RealVector born_probabilities(const RankOnePovm& povm, const DensityMatrix& state);

/// Re tr(obs * op). Throws `non-hermitian-input` if the imaginary part is not
/// negligible.
double expectation(const Observable& obs, const Matrix& op);
double expectation(const Observable& obs, const ShadowEstimate& op);
double expectation(const Observable& obs, const DensityMatrix& op);

double frobenius_error(const Matrix& a, const Matrix& b);

struct EigenvalueSplit {
  double positive = 0.0;
  double negative = 0.0;
};

EigenvalueSplit eigenvalue_split(const Matrix& op);

/// Eigenvalues of (X + X^dagger) / 2 in ascending order.
RealVector hermitian_eigenvalues(const Matrix& op);

/// Closest density matrix in Frobenius norm to op / tr(op). The input trace
/// must lie in [0.5, 1.5].
DensityMatrix project_physical(const Matrix& op);

struct LogLikelihood {
  double value = 0.0;
  std::size_t floored = 0;  ///< terms whose probability hit the floor
};

inline constexpr double kProbabilityFloor = 1e-12;

/// (1/M) sum_m sum_k f_mk log tr(A_mk rho). Probabilities are floored at
/// kProbabilityFloor.
LogLikelihood log_likelihood(std::span<const MeasurementRecord> records,
                             const DensityMatrix& rho);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_QUANTUM_HPP
