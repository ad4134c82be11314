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

#ifndef SHADOWTOMO_MEASUREMENT_HPP
#define SHADOWTOMO_MEASUREMENT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "shadowtomo/ensembles.hpp"
#include "shadowtomo/quantum.hpp"
#include "shadowtomo/rng.hpp"

namespace shadowtomo {

using Counts = std::vector<std::int64_t>;

/// One measurement setting and its outcome counts. Counts are kept as
/// integers so that sum(counts) == shots holds exactly.
struct MeasurementRecord {
  RankOnePovm povm;
  Counts counts;
  std::int64_t shots = 1;

  int dim() const noexcept { return povm.dim(); }
};

/// Checks sizes, nonnegativity and sum(counts) == shots.
MeasurementRecord make_record(RankOnePovm povm, Counts counts);

struct MeasurementPlan {
  int settings = 1;          ///< M
  std::int64_t shots = 1;    ///< L
  EnsembleSpec ensemble = GlobalHaar{2};
};

/// Exact multinomial draw by sequential conditional binomials.
Counts sample_counts(const RealVector& p, std::int64_t shots, RngStream& rng);

/// f / L
RealVector empirical_frequencies(const MeasurementRecord& rec);

/// sum_k phat_k u_k u_k^dagger = U^dagger diag(phat) U
Matrix adjoint_map(const RankOnePovm& povm, const RealVector& phat);

/// (U^dagger e_k)(U^dagger e_k)^dagger, the single-shot form of adjoint_map.
Matrix adjoint_map_one_hot(const RankOnePovm& povm, int outcome);

/// Records for settings 0..M-1. Setting m draws from `base.at(m)` (unitary and
/// coin lanes) and `base.at(m).fork(Lane::kShots)` (counts), so the records of
/// a smaller plan are a prefix of those of a larger one.
std::vector<MeasurementRecord> run_plan(const DensityMatrix& state,
                                        const MeasurementPlan& plan,
                                        const RngStream& base);

/// Same as run_plan, also reporting where each unitary came from.
std::vector<MeasurementRecord> run_plan(const DensityMatrix& state,
                                        const MeasurementPlan& plan,
                                        const RngStream& base,
                                        std::vector<Provenance>* provenance);

/// Replaces every record by `shots` one-hot records on the same POVM, one
/// per observed count.
std::vector<MeasurementRecord> expand_to_single_shot(
    std::span<const MeasurementRecord> records);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_MEASUREMENT_HPP
