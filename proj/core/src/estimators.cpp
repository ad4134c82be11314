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

#include "shadowtomo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shadowtomo {

namespace {

// Settings folded into one rank update; bounds the temporary D^2 x (chunk*D).
constexpr int kFrameChunk = 64;

Matrix stack_partials(std::span<const MeasurementRecord> records) {
  const int d = records.front().dim();
  Matrix columns(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(records.size()));
  for (std::size_t m = 0; m < records.size(); ++m) {
    columns.col(static_cast<Eigen::Index>(m)) =
        vectorize(adjoint_map(records[m].povm, empirical_frequencies(records[m])));
  }
  return columns;
}

void require_records(std::span<const MeasurementRecord> records) {
  if (records.empty()) throw Error(errc::kEmptyInput, "no measurement records");
  const int d = records.front().dim();
  for (const auto& rec : records) {
    if (rec.dim() != d) throw Error(errc::kDimMismatch, "records differ in dimension");
  }
}

void require_partial(const Matrix& partial, int dim) {
  if (partial.rows() != dim || partial.cols() != dim) {
    throw Error(errc::kDimMismatch, "partial estimate has wrong shape");
  }
}

void validate_method(const ShadowMethod& method) {
  if (const auto* ls = std::get_if<LeastSquares>(&method)) {
    if (!(ls->rcond > 0.0 && ls->rcond < 1.0)) {
      throw Error(errc::kInvalidArgument, "rcond must be in (0, 1)");
    }
  } else if (const auto* rls = std::get_if<RidgeRegression>(&method)) {
    if (!(rls->mu >= 0.0) || !std::isfinite(rls->mu)) {
      throw Error(errc::kInvalidArgument, "mu must be finite and >= 0");
    }
  }
}

std::vector<ShadowEstimate> split_columns(const Matrix& columns, int dim, Method method) {
  std::vector<ShadowEstimate> out;
  out.reserve(static_cast<std::size_t>(columns.cols()));
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    out.push_back(ShadowEstimate{unvectorize(columns.col(c), dim), method});
  }
  return out;
}

}  // namespace

Vector vectorize(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvectorize(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw Error(errc::kDimMismatch, "vector length is not D^2");
  }
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

FrameOperator FrameOperator::build(std::span<const RankOnePovm> povms) {
  if (povms.empty()) throw Error(errc::kEmptyInput, "frame needs at least one POVM");
  const int d = povms.front().dim();
  for (const auto& p : povms) {
    if (p.dim() != d) throw Error(errc::kDimMismatch, "POVMs differ in dimension");
  }
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  const auto settings = static_cast<int>(povms.size());
  Matrix frame = Matrix::Zero(d2, d2);
  const double weight = 1.0 / settings;
  for (int start = 0; start < settings; start += kFrameChunk) {
    const int stop = std::min(settings, start + kFrameChunk);
    Matrix columns(d2, static_cast<Eigen::Index>(stop - start) * d);
    for (int m = start; m < stop; ++m) {
      const Matrix& u = povms[static_cast<std::size_t>(m)].unitary();
      for (int k = 0; k < d; ++k) {
        const Eigen::Index col = static_cast<Eigen::Index>(m - start) * d + k;
        // vec(u u^dagger)[i + j D] = u_i conj(u_j), with u = conj(row k).
        for (int j = 0; j < d; ++j) {
          const Complex uj_conj = u(k, j);
          for (int i = 0; i < d; ++i) {
            columns(i + static_cast<Eigen::Index>(j) * d, col) = std::conj(u(k, i)) * uj_conj;
          }
        }
      }
    }
    frame.selfadjointView<Eigen::Lower>().rankUpdate(columns, weight);
  }
  Matrix full = frame.selfadjointView<Eigen::Lower>();
  full = (full + full.adjoint()) / 2.0;
  return FrameOperator(d, settings, std::move(full));
}

FrameOperator FrameOperator::build(std::span<const MeasurementRecord> records) {
  std::vector<RankOnePovm> povms;
  povms.reserve(records.size());
  for (const auto& rec : records) povms.push_back(rec.povm);
  return build(povms);
}

FrameOperator build_frame_operator(std::span<const RankOnePovm> povms) {
  return FrameOperator::build(povms);
}

Matrix channel_matrix(int dim) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim) * dim;
  const Vector vec_identity = vectorize(Matrix::Identity(dim, dim));
  return (Matrix::Identity(d2, d2) + vec_identity * vec_identity.adjoint()) / (dim + 1.0);
}

Method method_of(const ShadowMethod& method) {
  if (std::holds_alternative<LeastSquares>(method)) return Method::kLS;
  if (std::holds_alternative<RidgeRegression>(method)) return Method::kRLS;
  return Method::kCS;
}

LsSolver::LsSolver(const FrameOperator& frame, double rcond) : dim_(frame.dim()) {
  if (!(rcond > 0.0 && rcond < 1.0)) {
    throw Error(errc::kInvalidArgument, "rcond must be in (0, 1)");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(frame.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(errc::kSingularFrame, "eigendecomposition of the frame failed");
  }
  spectrum_ = solver.eigenvalues();
  const double lambda_max = spectrum_.maxCoeff();
  if (!(lambda_max > 0.0)) throw Error(errc::kSingularFrame, "frame operator is zero");
  cutoff_ = rcond * lambda_max;
  Eigen::Index first = 0;
  while (first < spectrum_.size() && spectrum_(first) <= cutoff_) ++first;
  const Eigen::Index kept = spectrum_.size() - first;
  kept_vectors_ = solver.eigenvectors().rightCols(kept);
  inverse_eigenvalues_ = spectrum_.tail(kept).cwiseInverse();
}

Matrix LsSolver::apply_columns(const Matrix& columns) const {
  Matrix projected = kept_vectors_.adjoint() * columns;
  projected = inverse_eigenvalues_.cast<Complex>().asDiagonal() * projected;
  return kept_vectors_ * projected;
}

Matrix LsSolver::apply(const Matrix& partial) const {
  require_partial(partial, dim_);
  return unvectorize(apply_columns(vectorize(partial)).col(0), dim_);
}

RlsSolver::RlsSolver(const FrameOperator& frame, double mu) : dim_(frame.dim()) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw Error(errc::kInvalidArgument, "mu must be finite and >= 0");
  }
  Matrix system = frame.matrix();
  system.diagonal().array() += mu / frame.settings();
  llt_.compute(system);
  if (llt_.info() != Eigen::Success || !(llt_.rcond() > 1e-12)) {
    throw Error(errc::kSingularFrame,
                "frame + (mu/M) I is not positive definite (mu = " + std::to_string(mu) + ")");
  }
}

Matrix RlsSolver::apply_columns(const Matrix& columns) const { return llt_.solve(columns); }

Matrix RlsSolver::apply(const Matrix& partial) const {
  require_partial(partial, dim_);
  return unvectorize(apply_columns(vectorize(partial)).col(0), dim_);
}

ShadowEstimate ls_shadow(const FrameOperator& frame, const Matrix& partial, double rcond) {
  return ShadowEstimate{LsSolver(frame, rcond).apply(partial), Method::kLS};
}

ShadowEstimate rls_shadow(const FrameOperator& frame, double mu, const Matrix& partial) {
  return ShadowEstimate{RlsSolver(frame, mu).apply(partial), Method::kRLS};
}

Matrix cs_channel_apply(const Matrix& op) {
  if (op.rows() != op.cols()) throw Error(errc::kDimMismatch, "operand must be square");
  const double d = static_cast<double>(op.rows());
  Matrix out = op / (d + 1.0);
  out.diagonal().array() += op.trace() / (d + 1.0);
  return out;
}

Matrix cs_channel_inverse(const Matrix& op) {
  if (op.rows() != op.cols()) throw Error(errc::kDimMismatch, "operand must be square");
  const double d = static_cast<double>(op.rows());
  Matrix out = (d + 1.0) * op;
  out.diagonal().array() -= op.trace();
  return out;
}

ShadowEstimate cs_shadow(const MeasurementRecord& rec) {
  const int d = rec.dim();
  // tr(adjoint_map) = sum(phat) = 1 exactly, so the trace term is the identity.
  Matrix out = (d + 1.0) * adjoint_map(rec.povm, empirical_frequencies(rec));
  out.diagonal().array() -= 1.0;
  return ShadowEstimate{std::move(out), Method::kCS};
}

Matrix mean_adjoint(std::span<const MeasurementRecord> records) {
  require_records(records);
  const int d = records.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& rec : records) sum += adjoint_map(rec.povm, empirical_frequencies(rec));
  return sum / static_cast<double>(records.size());
}

ShadowSet estimate(std::span<const MeasurementRecord> records, const ShadowMethod& method) {
  require_records(records);
  validate_method(method);
  const int d = records.front().dim();
  ShadowSet set;
  if (std::holds_alternative<ClassicalShadow>(method)) {
    set.shadows.reserve(records.size());
    for (const auto& rec : records) set.shadows.push_back(cs_shadow(rec));
  } else {
    const FrameOperator frame = FrameOperator::build(records);
    const Matrix partials = stack_partials(records);
    if (const auto* ls = std::get_if<LeastSquares>(&method)) {
      set.shadows = split_columns(LsSolver(frame, ls->rcond).apply_columns(partials), d,
                                  Method::kLS);
    } else {
      const auto& rls = std::get<RidgeRegression>(method);
      set.shadows = split_columns(RlsSolver(frame, rls.mu).apply_columns(partials), d,
                                  Method::kRLS);
    }
  }
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& s : set.shadows) sum += s.matrix;
  set.average = ShadowEstimate{sum / static_cast<double>(set.shadows.size()), method_of(method)};
  return set;
}

ShadowEstimate estimate_average(std::span<const MeasurementRecord> records,
                                const ShadowMethod& method) {
  require_records(records);
  validate_method(method);
  const Matrix partial = mean_adjoint(records);
  if (std::holds_alternative<ClassicalShadow>(method)) {
    return ShadowEstimate{cs_channel_inverse(partial), Method::kCS};
  }
  const FrameOperator frame = FrameOperator::build(records);
  if (const auto* ls = std::get_if<LeastSquares>(&method)) {
    return ShadowEstimate{LsSolver(frame, ls->rcond).apply(partial), Method::kLS};
  }
  return ShadowEstimate{RlsSolver(frame, std::get<RidgeRegression>(method).mu).apply(partial),
                        Method::kRLS};
}

}  // namespace shadowtomo
