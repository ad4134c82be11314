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

#ifndef SHADOWTOMO_RECORD_IO_HPP
#define SHADOWTOMO_RECORD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "shadowtomo/measurement.hpp"

namespace shadowtomo {

/// Records of one trial together with the header fields written before them.
struct RecordSet {
  int dim = 0;
  std::int64_t shots = 1;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::vector<MeasurementRecord> records;
};

// Line-oriented text format:
//
//   shadowtomo-records 1
//   set D <D> M <M> L <L> seed <seed> trial <t>
//   record <m>
//   <D lines, each with D "re im" pairs of U, row-major>
//   counts <f_0> ... <f_{D-1}>
//   ... more records, then more sets ...
//
// Doubles use the shortest round-trip representation, so a write/read cycle
// reproduces every unitary bit for bit.
void write_record_sets(std::ostream& out, std::span<const RecordSet> sets);
std::vector<RecordSet> read_record_sets(std::istream& in);

void save_record_sets(const std::filesystem::path& path, std::span<const RecordSet> sets);
std::vector<RecordSet> load_record_sets(const std::filesystem::path& path);

// Fixed-ensemble matrix file: one unitary per block of D lines, each line
// holding D "re im" pairs (row-major). Blocks are separated by blank lines;
// lines starting with '#' are comments.
void write_unitaries(std::ostream& out, std::span<const Matrix> unitaries);
std::vector<Matrix> read_unitaries(std::istream& in);
std::vector<Matrix> load_unitaries(const std::filesystem::path& path);

}  // namespace shadowtomo

#endif  // SHADOWTOMO_RECORD_IO_HPP
