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

#ifndef QCOIN_ESTIMATORS_HPP
#define QCOIN_ESTIMATORS_HPP

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "qcoin/coin.hpp"

namespace qcoin {

enum class Algorithm { kSuccessProbability, kTrialsToSuccess, kIterative };

/// "alg1", "alg2" or "iterative".
std::string_view algorithm_name(Algorithm algorithm);

/// Throws InputError for unknown names.
Algorithm parse_algorithm(std::string_view name);

/// A partition-function (or probability) estimate with its additive
/// half-width at confidence 1 - delta.
struct Estimate {
  double value = 0.0;
  double half_width = 0.0;
  double relative_target = 0.0;
  double confidence = 0.0;
  std::uint64_t samples_used = 0;
  std::uint64_t queries_used = 0;
  Algorithm algorithm = Algorithm::kSuccessProbability;
};

/// z with Phi(z) = 1 - delta/2. Acklam's rational approximation of the
/// inverse normal CDF, refined by one Newton step on erfc. Accurate to
/// better than 1e-9 for 1e-300 < delta < 1.
double z_quantile(double delta);

struct AcResult {
  double p_hat = 0.0;
  double eps_p = 0.0;
};

/// Agresti-Coull point estimate (s + z^2/2) / (S + z^2) and half-width
/// z sqrt(p_hat (1 - p_hat) / S).
AcResult ac_estimate(std::uint64_t successes, std::uint64_t tosses, double delta);

/// ceil(8 z^2 / eps_r^2 * 2^n e^beta / z_lower_bound). Passing the true Z
/// gives the guaranteed count.
std::uint64_t sample_count_thm1(int n_qubits, double beta, double z_lower_bound,
                                double eps_r, double delta);

/// Tosses the coin `tosses` times and returns Z^ = 2^n e^beta p^_AC with
/// half-width 2^n e^beta eps_p.
Estimate algorithm1(const CoinSpec& spec, std::uint64_t tosses, double delta,
                    std::uint64_t seed);

struct TrialsRecord {
  std::vector<std::uint64_t> r_values;
  std::uint64_t successes = 0;
};

struct Alg2Result {
  Estimate estimate;  // half_width from the Chebyshev guarantee
  TrialsRecord trials;
  /// z_delta-based interval from the sample variance of R. Reported for
  /// comparison only; the Chebyshev half-width is the guarantee.
  double empirical_half_width = 0.0;
};

/// Records trials-until-heads R_j for `target_successes` heads and returns
/// Z^ = 2^n e^beta / mean(R). R_j are drawn by geometric inversion, which is
/// distributed exactly as tossing until the first heads. The guaranteed
/// relative precision for the given delta is 1 / sqrt(delta S_suc).
Alg2Result algorithm2(const CoinSpec& spec, std::uint64_t target_successes, double delta,
                      std::uint64_t seed);

/// ceil(1 / (delta eps_r^2)).
std::uint64_t success_count_thm2(double eps_r, double delta);

/// S_suc * 2^n e^beta / Z with S_suc = 1/(delta eps_r^2) (not rounded).
double expected_total_tosses_thm2(int n_qubits, double beta, double z_beta, double eps_r,
                                  double delta);

/// Additive-precision estimator: (eps_additive, delta_step, round) ->
/// estimate within eps_additive of Z with confidence 1 - delta_step.
using AdditiveRunner = std::function<Estimate(double, double, int)>;

struct IterativeResult {
  Estimate estimate;
  int rounds = 0;
};

inline constexpr int kDefaultRoundCap = 64;

/// Relative precision from additive runs. Round r uses eps = eps_r z_max /
/// 2^r at confidence 1 - (6/pi^2) delta / r^2 and stops as soon as the
/// point estimate exceeds z_max / 2^r. Throws RuntimeError after
/// `max_rounds` rounds without stopping.
IterativeResult relative_from_additive(const AdditiveRunner& runner, double z_max,
                                       double eps_r, double delta,
                                       int max_rounds = kDefaultRoundCap);

/// Algorithm 1 as an additive runner. Uses the worst-case variance 1/4, so
/// S = ceil(z^2 / (4 eps_p^2)) with eps_p = eps / (2^n e^beta); round r is
/// seeded with derive_seed(seed, r).
AdditiveRunner algorithm1_additive_runner(const CoinSpec& spec, std::uint64_t seed);

/// Largest possible partition function for spectrum in [-1, 1]: 2^n e^beta.
double max_partition_function(int n_qubits, double beta);

}  // namespace qcoin

#endif  // QCOIN_ESTIMATORS_HPP
