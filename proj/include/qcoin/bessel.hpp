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

#ifndef QCOIN_BESSEL_HPP
#define QCOIN_BESSEL_HPP

#include <vector>

namespace qcoin {

/// Exponentially scaled modified Bessel functions of the first kind,
/// e^{-x} I_k(x) for k = 0..max_order and x >= 0.
///
/// Miller's backward recurrence I_{k-1} = I_{k+1} + (2k/x) I_k started well
/// past both max_order and x, normalized with e^x = I_0(x) + 2 sum_k I_k(x).
/// Relative accuracy is ~1e-15 for every order that is not underflowed.
std::vector<double> scaled_bessel_i(double x, int max_order);

}  // namespace qcoin

#endif  // QCOIN_BESSEL_HPP
