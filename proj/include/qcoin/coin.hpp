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

#ifndef QCOIN_COIN_HPP
#define QCOIN_COIN_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "qcoin/hamiltonian.hpp"
#include "qcoin/matfunc.hpp"

namespace qcoin {

enum class InputState { kMaximallyMixed };

/// Floor used in place of eps_prime = 0 when pricing an ideal coin.
inline constexpr double kIdealEpsFloor = 1e-16;

/// A coin C(f_beta[H], e^{-beta/2}, eps', 1/2^n): post-selection on a
/// block-encoding of exp(-beta H / 2), optionally replaced by a certified
/// Chebyshev approximant. The Hamiltonian must have spectrum in [-1, 1].
class CoinSpec {
 public:
  /// Exact propagator (eps' = 0).
  static CoinSpec ideal(Hamiltonian h, double beta);

  /// Builds the lowest-degree certified approximant for eps_prime.
  static CoinSpec approximate(Hamiltonian h, double beta, double eps_prime);

  /// Throws InputError unless approx targets `beta` and its certified error
  /// is <= eps_prime.
  static CoinSpec with_approximant(Hamiltonian h, double beta, double eps_prime,
                                   ChebyshevApproximant approx);

  const Hamiltonian& hamiltonian() const { return hamiltonian_; }
  double beta() const { return beta_; }
  double eps_prime() const { return eps_prime_; }
  double alpha() const;
  const std::optional<ChebyshevApproximant>& approximant() const { return approximant_; }
  InputState input_state() const { return InputState::kMaximallyMixed; }
  bool is_ideal() const { return !approximant_.has_value(); }

  /// Oracle calls per toss (the approximation degree).
  std::uint64_t queries_per_toss() const { return queries_per_toss_; }

 private:
  CoinSpec(Hamiltonian h, double beta, double eps_prime,
           std::optional<ChebyshevApproximant> approx);

  Hamiltonian hamiltonian_;
  double beta_;
  double eps_prime_;
  std::optional<ChebyshevApproximant> approximant_;
  std::uint64_t queries_per_toss_;
};

/// p = alpha^2 Tr[f~ rho f~^dagger] with rho = 1/2^n, evaluated as the
/// squared Frobenius norm of the sub-normalized block divided by 2^n.
/// For an ideal coin this equals Z_beta / (e^beta 2^n).
double success_probability(const CoinSpec& spec);

enum class Outcome : std::uint8_t { kTails = 0, kHeads = 1 };

struct TossStream {
  std::vector<Outcome> outcomes;
  std::vector<std::uint64_t> cumulative_queries;  // after each toss
  std::uint64_t seed = 0;
  std::uint64_t queries_consumed = 0;

  std::uint64_t heads() const;
  std::size_t size() const { return outcomes.size(); }
};

/// `count` i.i.d. Bernoulli(success_probability(spec)) tosses. Toss j is
/// heads iff the j-th Rng(seed).uniform() draw is below p.
TossStream toss(const CoinSpec& spec, std::uint64_t count, std::uint64_t seed);

/// Number of heads toss(spec, count, seed) would contain, without storing
/// the stream.
std::uint64_t count_heads(const CoinSpec& spec, std::uint64_t count, std::uint64_t seed);

/// Writes `index,outcome,cumulative_queries` rows with a header line.
void write_toss_csv(std::ostream& out, const TossStream& stream);

/// Oracle calls for one toss: required_degree(beta, eps_prime). eps_prime
/// <= 0 denotes an ideal coin and is priced at kIdealEpsFloor.
std::uint64_t query_cost(double beta, double eps_prime);

/// Inverse-temperature schedule 0 = beta_0 <= ... <= beta_l. After k
/// successful steps the register holds exp(-beta_k H) rho exp(-beta_k H)
/// (normalized), so beta_l = beta / 2 reproduces f_beta[H]. Step k applies
/// exp(-Delta_k H) with Delta_k = beta_k - beta_{k-1}.
struct Schedule {
  std::vector<double> betas;
  std::vector<double> per_step_eps;

  int steps() const { return static_cast<int>(per_step_eps.size()); }
  double width(int k) const;  // Delta_k, 1-based

  /// Throws InputError on a malformed schedule.
  void validate() const;
};

/// betas[k] = k (beta/2) / l, per-step eps = eps_total / l.
Schedule uniform_schedule(double beta, int l, double eps_total);

/// Schedule whose l steps all succeed with the same probability
/// (p_total)^{1/l}, found by bisection on the monotone cumulative success
/// probability of the ideal coin.
Schedule equal_probability_schedule(const Hamiltonian& h, double beta, int l,
                                    double eps_total);

/// p_k = Z_{2 beta_k} / (e^{2 Delta_k} Z_{2 beta_{k-1}}) for 1 <= k <= l.
double step_success_probability(const Hamiltonian& h, const Schedule& schedule, int k);

/// q(2 Delta_k, eps'_k) for 1 <= k <= l.
std::uint64_t step_query_cost(const Schedule& schedule, int k);

/// Average oracle calls per full traversal: sum_j q_j / prod_{k>=j} p_k.
double expected_queries_per_success(const Hamiltonian& h, const Schedule& schedule);

/// max_j q_j * sum_{j=1..l} 2^{j b} with b = -log2(min_k p_k). For an
/// equal-probability schedule this bounds expected_queries_per_success.
double average_query_bound(const Hamiltonian& h, const Schedule& schedule);

struct FragmentedRun {
  TossStream stream;  // heads per traversal, tails per restart
  std::uint64_t successes = 0;
  std::uint64_t restarts = 0;
  std::vector<std::uint64_t> step_attempts;
  std::vector<std::uint64_t> step_successes;

  double queries_per_success() const;
};

/// Runs the sequential-step process until `target_successes` traversals
/// complete. A failed step restarts from step 1. Per-step coins are ideal;
/// eps'_k only enters the query accounting.
FragmentedRun toss_fragmented(const Hamiltonian& h, const Schedule& schedule,
                              std::uint64_t target_successes, std::uint64_t seed);

/// (n + beta log2(e) - log2(Z_beta)) / b. Throws InputError for b <= 0.
double schedule_size_lower_bound(int n_qubits, double beta, double z_beta, double b);

}  // namespace qcoin

#endif  // QCOIN_COIN_HPP
