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

#include "shadowtomo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadowtomo/measurement.hpp"

namespace shadowtomo {

namespace {

constexpr double kStateTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(errc::kDimMismatch, std::string(what) + " must be a nonempty square matrix");
  }
}

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw Error(errc::kDimMismatch,
                "dimension " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Tolerance scaled to the magnitude of the entries.
void require_hermitian(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (hermiticity_defect(m) > 1e-9 * scale) {
    throw Error(errc::kNonHermitian, "matrix is not Hermitian");
  }
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kLS:
      return "LS";
    case Method::kRLS:
      return "RLS";
    case Method::kCS:
      return "CS";
  }
  return "?";
}

double hermiticity_defect(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix DensityMatrix::from_matrix(Matrix entries) {
  require_square(entries, "density matrix");
  if (hermiticity_defect(entries) > kStateTolerance) {
    throw Error(errc::kInvalidArgument, "density matrix is not Hermitian");
  }
  const Complex tr = entries.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStateTolerance) {
    throw Error(errc::kInvalidArgument, "density matrix trace is not 1");
  }
  if (hermitian_eigenvalues(entries).minCoeff() < -kPsdTolerance) {
    throw Error(errc::kInvalidArgument, "density matrix is not PSD");
  }
  return DensityMatrix(std::move(entries));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (psi.size() == 0 || norm == 0.0) {
    throw Error(errc::kInvalidArgument, "pure state needs a nonzero vector");
  }
  const Vector unit = psi / norm;
  return DensityMatrix(hermitian_part(unit * unit.adjoint()));
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw Error(errc::kInvalidArgument, "basis index out of range");
  }
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw Error(errc::kInvalidArgument, "dimension must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Observable Observable::from_matrix(Matrix entries) {
  require_square(entries, "observable");
  if (hermiticity_defect(entries) > kStateTolerance) {
    throw Error(errc::kNonHermitian, "observable is not Hermitian");
  }
  return Observable(std::move(entries), std::nullopt);
}

Observable Observable::rank_one(Vector phi) {
  if (phi.size() == 0 || std::abs(phi.norm() - 1.0) > kStateTolerance) {
    throw Error(errc::kInvalidArgument, "rank-1 observable needs a unit vector");
  }
  Matrix entries = hermitian_part(phi * phi.adjoint());
  return Observable(std::move(entries), std::move(phi));
}

RankOnePovm RankOnePovm::from_unitary(Matrix unitary, double tolerance) {
  require_square(unitary, "POVM unitary");
  const auto d = unitary.rows();
  const double defect =
      (unitary.adjoint() * unitary - Matrix::Identity(d, d)).norm();
  if (!(defect <= tolerance)) {
    throw Error(errc::kNonUnitary,
                "||U^dagger U - I||_F = " + std::to_string(defect));
  }
  return RankOnePovm(std::move(unitary));
}

Matrix RankOnePovm::element(int k) const {
  const Vector u = element_vector(k);
  return u * u.adjoint();
}

RealVector born_probabilities(const RankOnePovm& povm, const DensityMatrix& state) {
  require_same_dim(povm.dim(), state.dim());
  const Matrix& u = povm.unitary();
  // diag(U rho U^dagger), one row at a time.
  const Matrix rotated = u * state.matrix();
  RealVector p(povm.dim());
  for (int k = 0; k < povm.dim(); ++k) {
    const Complex v = (rotated.row(k) * u.row(k).adjoint())(0, 0);
    p(k) = std::clamp(v.real(), 0.0, 1.0);
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > 1e-12 && total > 0.0) p /= total;
  return p;
}

double expectation(const Observable& obs, const Matrix& op) {
  require_square(op, "operand");
  require_same_dim(obs.dim(), op.rows());
  // tr(A B) = sum_ij A_ij B_ji
  const Complex value = obs.matrix().cwiseProduct(op.transpose()).sum();
  if (std::abs(value.imag()) >= 1e-9) {
    throw Error(errc::kNonHermitian,
                "tr(obs op) has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

double expectation(const Observable& obs, const ShadowEstimate& op) {
  return expectation(obs, op.matrix);
}

double expectation(const Observable& obs, const DensityMatrix& op) {
  return expectation(obs, op.matrix());
}

double frobenius_error(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(errc::kDimMismatch, "frobenius_error operands differ in shape");
  }
  return (a - b).norm();
}

RealVector hermitian_eigenvalues(const Matrix& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(op),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

EigenvalueSplit eigenvalue_split(const Matrix& op) {
  require_square(op, "operand");
  require_hermitian(op);
  EigenvalueSplit split;
  for (double lambda : hermitian_eigenvalues(op)) {
    if (lambda > 0.0) {
      split.positive += lambda;
    } else {
      split.negative += lambda;
    }
  }
  return split;
}

DensityMatrix project_physical(const Matrix& op) {
  require_square(op, "operand");
  require_hermitian(op);
  const double tr = op.trace().real();
  if (!(std::abs(tr - 1.0) <= 0.5)) {
    throw Error(errc::kInvalidArgument,
                "trace " + std::to_string(tr) + " too far from 1 to project");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(op) / tr);
  // Ascending order from Eigen; walk the negative tail from the smallest.
  RealVector mu = solver.eigenvalues();
  const int d = static_cast<int>(mu.size());
  double deficit = 0.0;
  int first_kept = 0;
  while (first_kept < d) {
    const int remaining = d - first_kept;
    if (mu(first_kept) + deficit / remaining >= 0.0) break;
    deficit += mu(first_kept);
    mu(first_kept) = 0.0;
    ++first_kept;
  }
  const int kept = d - first_kept;
  for (int i = first_kept; i < d; ++i) mu(i) += deficit / kept;
  const Matrix& v = solver.eigenvectors();
  Matrix rho = v * mu.cast<Complex>().asDiagonal() * v.adjoint();
  rho = hermitian_part(rho);
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(hermitian_part(rho));
}

LogLikelihood log_likelihood(std::span<const MeasurementRecord> records,
                             const DensityMatrix& rho) {
  if (records.empty()) {
    throw Error(errc::kEmptyInput, "log_likelihood needs at least one record");
  }
  LogLikelihood result;
  double total = 0.0;
  for (const auto& rec : records) {
    const RealVector p = born_probabilities(rec.povm, rho);
    for (int k = 0; k < rec.povm.outcomes(); ++k) {
      const auto f = rec.counts[static_cast<std::size_t>(k)];
      if (f == 0) continue;
      double pk = p(k);
      if (pk < kProbabilityFloor) {
        pk = kProbabilityFloor;
        ++result.floored;
      }
      total += static_cast<double>(f) * std::log(pk);
    }
  }
  result.value = total / static_cast<double>(records.size());
  return result;
}

}  // namespace shadowtomo
