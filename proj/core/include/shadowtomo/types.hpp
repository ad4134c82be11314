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

#ifndef SHADOWTOMO_TYPES_HPP
#define SHADOWTOMO_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace shadowtomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Error raised by every library operation. `code()` is a short stable
/// identifier such as "dim-mismatch" or "singular-frame".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail);

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* kDimMismatch = "dim-mismatch";
inline constexpr const char* kNonHermitian = "non-hermitian-input";
inline constexpr const char* kInvalidArgument = "invalid-argument";
inline constexpr const char* kEmptyInput = "empty-input";
inline constexpr const char* kSingularFrame = "singular-frame";
inline constexpr const char* kNonUnitary = "non-unitary";
inline constexpr const char* kEnsembleExhausted = "ensemble-exhausted";
inline constexpr const char* kUnsupportedEnsemble = "unsupported-ensemble";
inline constexpr const char* kIo = "io-error";
inline constexpr const char* kResourceGuard = "resource-guard";
}  // namespace errc

}  // namespace shadowtomo

#endif  // SHADOWTOMO_TYPES_HPP
