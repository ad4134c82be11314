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

#ifndef SHADOWTOMO_RNG_HPP
#define SHADOWTOMO_RNG_HPP

#include <cstdint>
#include <random>

namespace shadowtomo {

/// Independent sub-streams derived from the same (seed, trial, index) key.
enum class Lane : std::uint64_t {
  kUnitary = 0,
  kCoin = 1,
  kShots = 2,
  kObservables = 3,
  kTheory = 4,
};

/// Counter-keyed random stream. The engine state is a pure function of
/// (seed, trial, index, lane), so a stream can be rebuilt anywhere, on any
/// thread, and yield the same sequence.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t index,
            Lane lane = Lane::kUnitary);

  /// Fresh stream with the same key on a different lane.
  RngStream fork(Lane lane) const { return {seed_, trial_, index_, lane}; }
  /// Fresh stream with the same seed and trial at another index.
  RngStream at(std::uint64_t index) const { return {seed_, trial_, index, lane_}; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t trial() const noexcept { return trial_; }
  std::uint64_t index() const noexcept { return index_; }
  Lane lane() const noexcept { return lane_; }

  std::mt19937_64& engine() noexcept { return engine_; }

  double uniform();
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint64_t index_;
  Lane lane_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace shadowtomo

#endif  // SHADOWTOMO_RNG_HPP
