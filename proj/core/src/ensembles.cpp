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

#include "shadowtomo/ensembles.hpp"

#include <cmath>
#include <string>

namespace shadowtomo {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_qubits(int qubits) {
  if (qubits < 1 || qubits > 30) {
    throw Error(errc::kInvalidArgument, "qubit count must be in [1, 30]");
  }
}

}  // namespace

void validate(const EnsembleSpec& spec) {
  std::visit(
      Overloaded{
          [](const GlobalHaar& g) {
            if (g.dim < 2) throw Error(errc::kInvalidArgument, "global Haar needs D >= 2");
          },
          [](const LocalHaarTensor& l) { require_qubits(l.qubits); },
          [](const Mixture& m) {
            require_qubits(m.qubits);
            if (!(m.eta >= 0.0 && m.eta <= 1.0)) {
              throw Error(errc::kInvalidArgument, "mixture eta must be in [0, 1]");
            }
          },
          [](const Fixed& f) {
            if (f.unitaries.empty()) {
              throw Error(errc::kInvalidArgument, "fixed ensemble is empty");
            }
            const auto d = f.unitaries.front().rows();
            for (const auto& u : f.unitaries) {
              if (u.rows() != d || u.cols() != d) {
                throw Error(errc::kDimMismatch, "fixed ensemble mixes dimensions");
              }
              if (unitarity_defect(u) > 1e-8) {
                throw Error(errc::kNonUnitary, "fixed ensemble entry is not unitary");
              }
            }
          },
      },
      spec);
}

int ensemble_dim(const EnsembleSpec& spec) {
  return std::visit(
      Overloaded{
          [](const GlobalHaar& g) { return g.dim; },
          [](const LocalHaarTensor& l) { return 1 << l.qubits; },
          [](const Mixture& m) { return 1 << m.qubits; },
          [](const Fixed& f) {
            return f.unitaries.empty() ? 0 : static_cast<int>(f.unitaries.front().rows());
          },
      },
      spec);
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

Matrix sample_global_haar(int dim, RngStream& rng) {
  if (dim < 2) throw Error(errc::kInvalidArgument, "global Haar needs D >= 2");
  // Standard complex normal entries: real and imaginary parts have variance 1/2.
  const double scale = std::sqrt(0.5);
  Matrix ginibre(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      ginibre(i, j) = Complex(scale * re, scale * im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(ginibre);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Matrix sample_local_haar_tensor(int qubits, RngStream& rng) {
  require_qubits(qubits);
  Matrix result = sample_global_haar(2, rng);
  for (int q = 1; q < qubits; ++q) {
    const Matrix factor = sample_global_haar(2, rng);
    Matrix next(result.rows() * 2, result.cols() * 2);
    for (Eigen::Index i = 0; i < result.rows(); ++i) {
      for (Eigen::Index j = 0; j < result.cols(); ++j) {
        next.block<2, 2>(2 * i, 2 * j) = result(i, j) * factor;
      }
    }
    result = std::move(next);
  }
  return result;
}

SampledUnitary sample_unitary(const EnsembleSpec& spec, RngStream& rng) {
  return std::visit(
      Overloaded{
          [&](const GlobalHaar& g) {
            return SampledUnitary{sample_global_haar(g.dim, rng), Provenance::kGlobal};
          },
          [&](const LocalHaarTensor& l) {
            return SampledUnitary{sample_local_haar_tensor(l.qubits, rng),
                                  Provenance::kLocal};
          },
          [&](const Mixture& m) {
            RngStream coin = rng.fork(Lane::kCoin);
            const bool local = coin.uniform() < m.eta;
            if (local) {
              return SampledUnitary{sample_local_haar_tensor(m.qubits, rng),
                                    Provenance::kLocal};
            }
            return SampledUnitary{sample_global_haar(1 << m.qubits, rng),
                                  Provenance::kGlobal};
          },
          [&](const Fixed& f) {
            const auto m = rng.index();
            if (m >= f.unitaries.size()) {
              throw Error(errc::kEnsembleExhausted,
                          "fixed ensemble has " + std::to_string(f.unitaries.size()) +
                              " unitaries, setting " + std::to_string(m) + " requested");
            }
            return SampledUnitary{f.unitaries[m], Provenance::kFixed};
          },
      },
      spec);
}

RankOnePovm povm_from_unitary(Matrix unitary) {
  return RankOnePovm::from_unitary(std::move(unitary), 1e-8);
}

Vector sample_haar_vector(int dim, RngStream& rng) {
  if (dim < 1) throw Error(errc::kInvalidArgument, "dimension must be positive");
  Vector v(dim);
  const double scale = std::sqrt(0.5);
  for (int i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(scale * re, scale * im);
  }
  return v / v.norm();
}

DensityMatrix sample_random_state(int dim, RngStream& rng) {
  if (dim < 1) throw Error(errc::kInvalidArgument, "dimension must be positive");
  Matrix g(dim, dim);
  const double scale = std::sqrt(0.5);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(scale * re, scale * im);
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix::from_matrix(std::move(rho));
}

}  // namespace shadowtomo
