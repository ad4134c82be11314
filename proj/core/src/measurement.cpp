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

#include "shadowtomo/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace shadowtomo {

MeasurementRecord make_record(RankOnePovm povm, Counts counts) {
  if (counts.size() != static_cast<std::size_t>(povm.outcomes())) {
    throw Error(errc::kDimMismatch, "counts length differs from outcome count");
  }
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw Error(errc::kInvalidArgument, "negative count");
    total += c;
  }
  if (total < 1) throw Error(errc::kInvalidArgument, "record has no shots");
  return MeasurementRecord{std::move(povm), std::move(counts), total};
}

Counts sample_counts(const RealVector& p, std::int64_t shots, RngStream& rng) {
  if (shots < 1) throw Error(errc::kInvalidArgument, "shots must be >= 1");
  if (p.size() == 0 || (p.array() < 0.0).any() || std::abs(p.sum() - 1.0) > 1e-10) {
    throw Error(errc::kInvalidArgument, "invalid probability vector");
  }
  const auto k_count = static_cast<std::size_t>(p.size());
  Counts counts(k_count, 0);
  std::int64_t remaining = shots;
  double mass_left = 1.0;
  for (std::size_t k = 0; k + 1 < k_count && remaining > 0; ++k) {
    const double pk = p(static_cast<Eigen::Index>(k));
    const double conditional = mass_left > 0.0 ? std::clamp(pk / mass_left, 0.0, 1.0) : 0.0;
    std::int64_t draw = 0;
    if (conditional >= 1.0) {
      draw = remaining;
    } else if (conditional > 0.0) {
      draw = std::binomial_distribution<std::int64_t>(remaining, conditional)(rng.engine());
    }
    counts[k] = draw;
    remaining -= draw;
    mass_left -= pk;
  }
  counts[k_count - 1] += remaining;
  return counts;
}

RealVector empirical_frequencies(const MeasurementRecord& rec) {
  RealVector phat(static_cast<Eigen::Index>(rec.counts.size()));
  const double shots = static_cast<double>(rec.shots);
  for (std::size_t k = 0; k < rec.counts.size(); ++k) {
    phat(static_cast<Eigen::Index>(k)) = static_cast<double>(rec.counts[k]) / shots;
  }
  return phat;
}

Matrix adjoint_map(const RankOnePovm& povm, const RealVector& phat) {
  if (phat.size() != povm.outcomes()) {
    throw Error(errc::kDimMismatch, "frequency vector length differs from outcome count");
  }
  const Matrix& u = povm.unitary();
  Matrix out = u.adjoint() * phat.cast<Complex>().asDiagonal() * u;
  return (out + out.adjoint()) / 2.0;
}

Matrix adjoint_map_one_hot(const RankOnePovm& povm, int outcome) {
  if (outcome < 0 || outcome >= povm.outcomes()) {
    throw Error(errc::kInvalidArgument, "outcome index out of range");
  }
  const Vector v = povm.unitary().row(outcome).adjoint();
  return v * v.adjoint();
}

std::vector<MeasurementRecord> run_plan(const DensityMatrix& state,
                                        const MeasurementPlan& plan,
                                        const RngStream& base) {
  return run_plan(state, plan, base, nullptr);
}

std::vector<MeasurementRecord> run_plan(const DensityMatrix& state,
                                        const MeasurementPlan& plan,
                                        const RngStream& base,
                                        std::vector<Provenance>* provenance) {
  if (plan.settings < 1 || plan.shots < 1) {
    throw Error(errc::kInvalidArgument, "plan needs M >= 1 and L >= 1");
  }
  validate(plan.ensemble);
  if (ensemble_dim(plan.ensemble) != state.dim()) {
    throw Error(errc::kDimMismatch, "ensemble and state dimensions differ");
  }
  std::vector<MeasurementRecord> records;
  records.reserve(static_cast<std::size_t>(plan.settings));
  if (provenance) provenance->clear();
  for (int m = 0; m < plan.settings; ++m) {
    RngStream stream = base.at(static_cast<std::uint64_t>(m)).fork(Lane::kUnitary);
    SampledUnitary sampled = sample_unitary(plan.ensemble, stream);
    if (provenance) provenance->push_back(sampled.provenance);
    RankOnePovm povm = povm_from_unitary(std::move(sampled.unitary));
    const RealVector p = born_probabilities(povm, state);
    RngStream shots_rng = stream.fork(Lane::kShots);
    Counts counts = sample_counts(p, plan.shots, shots_rng);
    records.push_back(MeasurementRecord{std::move(povm), std::move(counts), plan.shots});
  }
  return records;
}

std::vector<MeasurementRecord> expand_to_single_shot(
    std::span<const MeasurementRecord> records) {
  std::vector<MeasurementRecord> out;
  for (const auto& rec : records) {
    for (std::size_t k = 0; k < rec.counts.size(); ++k) {
      for (std::int64_t c = 0; c < rec.counts[k]; ++c) {
        Counts one_hot(rec.counts.size(), 0);
        one_hot[k] = 1;
        out.push_back(MeasurementRecord{rec.povm, std::move(one_hot), 1});
      }
    }
  }
  return out;
}

}  // namespace shadowtomo
