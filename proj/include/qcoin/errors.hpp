// Copyright 2026 The qcoin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCOIN_ERRORS_HPP
#define QCOIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcoin {

/// Raised when an argument violates an operation's precondition.
/// The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation fails to converge or hits a cap at runtime.
/// The CLI maps this to exit code 3.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Noise fit failures. `best_xi`/`best_p` hold the last iterate when the
/// iteration cap was hit; both are NaN for degenerate input.
class FitError : public RuntimeError {
 public:
  FitError(const std::string& what, double best_xi, double best_p)
      : RuntimeError(what), best_xi_(best_xi), best_p_(best_p) {}

  double best_xi() const { return best_xi_; }
  double best_p() const { return best_p_; }

 private:
  double best_xi_;
  double best_p_;
};

}  // namespace qcoin

#endif  // QCOIN_ERRORS_HPP
