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

#include "shadowtomo/record_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace shadowtomo {

namespace {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(errc::kIo, "bad number '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) tokens.push_back(t);
  return tokens;
}

void write_matrix_rows(std::ostream& out, const Matrix& u) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(u(i, j).real()) << ' ' << format_double(u(i, j).imag());
    }
    out << '\n';
  }
}

void parse_matrix_row(const std::vector<std::string>& tokens, Matrix& u, Eigen::Index row) {
  if (tokens.size() != static_cast<std::size_t>(2 * u.cols())) {
    throw Error(errc::kIo, "matrix row has " + std::to_string(tokens.size()) +
                               " values, expected " + std::to_string(2 * u.cols()));
  }
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const auto idx = static_cast<std::size_t>(2 * j);
    u(row, j) = Complex(parse_double(tokens[idx]), parse_double(tokens[idx + 1]));
  }
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, non-comment line split into tokens; empty at EOF.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto tokens = split(line);
      if (tokens.empty() || tokens.front().starts_with('#')) continue;
      return tokens;
    }
    return {};
  }

  int line() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

std::int64_t parse_int(const std::string& token) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(errc::kIo, "bad integer '" + token + "'");
  }
  return v;
}

}  // namespace

void write_record_sets(std::ostream& out, std::span<const RecordSet> sets) {
  out << "shadowtomo-records 1\n";
  for (const auto& set : sets) {
    out << "set D " << set.dim << " M " << set.records.size() << " L " << set.shots
        << " seed " << set.seed << " trial " << set.trial << '\n';
    for (std::size_t m = 0; m < set.records.size(); ++m) {
      const auto& rec = set.records[m];
      out << "record " << m << '\n';
      write_matrix_rows(out, rec.povm.unitary());
      out << "counts";
      for (auto c : rec.counts) out << ' ' << c;
      out << '\n';
    }
  }
}

std::vector<RecordSet> read_record_sets(std::istream& in) {
  LineReader reader(in);
  auto tokens = reader.next();
  if (tokens.size() != 2 || tokens[0] != "shadowtomo-records" || tokens[1] != "1") {
    throw Error(errc::kIo, "missing 'shadowtomo-records 1' header");
  }
  std::vector<RecordSet> sets;
  tokens = reader.next();
  while (!tokens.empty()) {
    if (tokens.size() != 11 || tokens[0] != "set" || tokens[1] != "D" || tokens[3] != "M" ||
        tokens[5] != "L" || tokens[7] != "seed" || tokens[9] != "trial") {
      throw Error(errc::kIo, "malformed set header at line " + std::to_string(reader.line()));
    }
    RecordSet set;
    set.dim = static_cast<int>(parse_int(tokens[2]));
    const auto settings = parse_int(tokens[4]);
    set.shots = parse_int(tokens[6]);
    set.seed = static_cast<std::uint64_t>(parse_int(tokens[8]));
    set.trial = static_cast<std::uint64_t>(parse_int(tokens[10]));
    if (set.dim < 1 || settings < 0 || set.shots < 1) {
      throw Error(errc::kIo, "invalid set header values");
    }
    for (std::int64_t m = 0; m < settings; ++m) {
      tokens = reader.next();
      if (tokens.size() != 2 || tokens[0] != "record" || parse_int(tokens[1]) != m) {
        throw Error(errc::kIo, "expected 'record " + std::to_string(m) + "' at line " +
                                   std::to_string(reader.line()));
      }
      Matrix u(set.dim, set.dim);
      for (int i = 0; i < set.dim; ++i) parse_matrix_row(reader.next(), u, i);
      tokens = reader.next();
      if (tokens.size() != static_cast<std::size_t>(set.dim) + 1 || tokens[0] != "counts") {
        throw Error(errc::kIo, "malformed counts at line " + std::to_string(reader.line()));
      }
      Counts counts;
      for (std::size_t k = 1; k < tokens.size(); ++k) counts.push_back(parse_int(tokens[k]));
      MeasurementRecord rec = make_record(povm_from_unitary(std::move(u)), std::move(counts));
      if (rec.shots != set.shots) {
        throw Error(errc::kIo, "record " + std::to_string(m) + " counts do not sum to L");
      }
      set.records.push_back(std::move(rec));
    }
    sets.push_back(std::move(set));
    tokens = reader.next();
  }
  return sets;
}

void save_record_sets(const std::filesystem::path& path, std::span<const RecordSet> sets) {
  std::ofstream out(path);
  if (!out) throw Error(errc::kIo, "cannot open " + path.string() + " for writing");
  write_record_sets(out, sets);
  if (!out) throw Error(errc::kIo, "write failed for " + path.string());
}

std::vector<RecordSet> load_record_sets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kIo, "cannot open " + path.string());
  try {
    return read_record_sets(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_unitaries(std::ostream& out, std::span<const Matrix> unitaries) {
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    if (i > 0) out << '\n';
    write_matrix_rows(out, unitaries[i]);
  }
}

std::vector<Matrix> read_unitaries(std::istream& in) {
  std::vector<Matrix> result;
  std::vector<std::vector<std::string>> block;
  auto flush = [&] {
    if (block.empty()) return;
    const auto d = static_cast<Eigen::Index>(block.size());
    if (!result.empty() && result.front().rows() != d) {
      throw Error(errc::kIo, "unitary blocks differ in dimension");
    }
    Matrix u(d, d);
    for (Eigen::Index i = 0; i < d; ++i) parse_matrix_row(block[static_cast<std::size_t>(i)], u, i);
    result.push_back(std::move(u));
    block.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = split(line);
    if (!tokens.empty() && tokens.front().starts_with('#')) continue;
    if (tokens.empty()) {
      flush();
    } else {
      block.push_back(std::move(tokens));
    }
  }
  flush();
  return result;
}

std::vector<Matrix> load_unitaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kIo, "cannot open " + path.string());
  return read_unitaries(in);
}

}  // namespace shadowtomo
