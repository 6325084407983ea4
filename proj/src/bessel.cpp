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

#include "qcoin/bessel.hpp"

#include <algorithm>
#include <cmath>

#include "qcoin/errors.hpp"

namespace qcoin {

std::vector<double> scaled_bessel_i(double x, int max_order) {
  if (max_order < 0) {
    throw InputError("scaled_bessel_i: negative order");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw InputError("scaled_bessel_i: argument must be finite and >= 0");
  }
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  // e^{-x} I_k(x) ~ exp(-k^2 / 2x) for k << x and ~ (x/2)^k / k! for k >> x,
  // so this start index leaves the discarded tail far below 1e-20.
  const int start = std::max(max_order, static_cast<int>(std::ceil(x))) + 40 +
                    static_cast<int>(std::ceil(12.0 * std::sqrt(x + 1.0)));
  std::vector<double> work(static_cast<std::size_t>(start) + 2, 0.0);
  work[static_cast<std::size_t>(start) + 1] = 0.0;
  work[static_cast<std::size_t>(start)] = 1e-300;
  constexpr double kRescaleAbove = 1e250;
  for (int k = start; k >= 1; --k) {
    const auto uk = static_cast<std::size_t>(k);
    work[uk - 1] = work[uk + 1] + (2.0 * k / x) * work[uk];
    if (work[uk - 1] > kRescaleAbove) {
      for (std::size_t j = uk - 1; j <= static_cast<std::size_t>(start); ++j) {
        work[j] /= kRescaleAbove;
      }
    }
  }
  // Sum from the small end to limit rounding.
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    norm += 2.0 * work[static_cast<std::size_t>(k)];
  }
  norm += work[0];
  for (int k = 0; k <= max_order; ++k) {
    out[static_cast<std::size_t>(k)] = work[static_cast<std::size_t>(k)] / norm;
  }
  return out;
}

}  // namespace qcoin
