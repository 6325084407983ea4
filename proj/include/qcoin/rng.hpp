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

#ifndef QCOIN_RNG_HPP
#define QCOIN_RNG_HPP

#include <cstdint>
#include <random>

namespace qcoin {

/// SplitMix64 finalizer applied to `seed + stream * golden_gamma`.
/// Used to derive statistically independent seeds for parallel tasks
/// (instance, beta, repetition) from a single experiment seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded random source used by every sampler in the library.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the C++
/// standard) seeded with derive_seed(seed, 0). All variates are produced by
/// the explicit transforms below rather than std distributions, whose
/// algorithms are implementation-defined, so streams are bitwise
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// True with probability p (p is clamped to [0, 1]).
  bool bernoulli(double p);

  /// Number of Bernoulli(p) trials up to and including the first success,
  /// sampled by inversion. Requires p > 0.
  std::uint64_t geometric(double p);

  /// Binomial(trials, p) as a sum of Bernoulli draws.
  std::uint64_t binomial(std::uint64_t trials, double p);

  /// Standard normal via the Box-Muller transform.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qcoin

#endif  // QCOIN_RNG_HPP
