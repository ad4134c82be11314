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

#ifndef SHADOWTOMO_ENSEMBLES_HPP
#define SHADOWTOMO_ENSEMBLES_HPP

#include <variant>
#include <vector>

#include "shadowtomo/quantum.hpp"
#include "shadowtomo/rng.hpp"
#include "shadowtomo/types.hpp"

namespace shadowtomo {

struct GlobalHaar {
  int dim = 2;
};

/// Kronecker product of independent single-qubit Haar unitaries.
struct LocalHaarTensor {
  int qubits = 1;
};

/// Local tensor-product draw with probability eta, global Haar otherwise.
struct Mixture {
  double eta = 0.0;
  int qubits = 1;
};

/// Deterministic list; measurement index m receives unitaries[m].
struct Fixed {
  std::vector<Matrix> unitaries;
};

using EnsembleSpec = std::variant<GlobalHaar, LocalHaarTensor, Mixture, Fixed>;

/// Throws `invalid-argument` for malformed specs.
void validate(const EnsembleSpec& spec);
int ensemble_dim(const EnsembleSpec& spec);

enum class Provenance { kGlobal, kLocal, kFixed };

struct SampledUnitary {
  Matrix unitary;
  Provenance provenance = Provenance::kGlobal;
};

/// Ginibre matrix, QR, then Q times the phases of diag(R).
Matrix sample_global_haar(int dim, RngStream& rng);
Matrix sample_local_haar_tensor(int qubits, RngStream& rng);

/// The mixture coin is drawn once per measurement setting from the
/// `Lane::kCoin` fork of `rng`, so the unitary draw itself is the same as
/// for the pure ensemble with the same stream.
SampledUnitary sample_unitary(const EnsembleSpec& spec, RngStream& rng);

RankOnePovm povm_from_unitary(Matrix unitary);

/// ||U^dagger U - I||_F
double unitarity_defect(const Matrix& u);

/// Haar-random unit vector in C^dim (normalized complex Gaussian).
Vector sample_haar_vector(int dim, RngStream& rng);

/// Random full-rank state G G^dagger / tr(G G^dagger) with G complex Ginibre.
DensityMatrix sample_random_state(int dim, RngStream& rng);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_ENSEMBLES_HPP
