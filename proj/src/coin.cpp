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

#include "qcoin/coin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qcoin/errors.hpp"
#include "qcoin/oracle.hpp"
#include "qcoin/rng.hpp"

namespace qcoin {
namespace {

void check_unit_spectrum(const Hamiltonian& h) {
  if (!h.has_unit_spectrum()) {
    throw InputError("coin Hamiltonian spectrum leaves [-1, 1]; rescale it first");
  }
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InputError("beta must be finite and >= 0");
  }
}

double frobenius_probability(const Hamiltonian& h, const RealVector& block_eigenvalues) {
  const EigenCache& eig = h.eigen();
  const ComplexMatrix block = eig.vectors *
                              block_eigenvalues.cast<std::complex<double>>().asDiagonal() *
                              eig.vectors.adjoint();
  return block.squaredNorm() / static_cast<double>(h.dimension());
}

}  // namespace

CoinSpec::CoinSpec(Hamiltonian h, double beta, double eps_prime,
                   std::optional<ChebyshevApproximant> approx)
    : hamiltonian_(std::move(h)),
      beta_(beta),
      eps_prime_(eps_prime),
      approximant_(std::move(approx)),
      queries_per_toss_(approximant_ ? static_cast<std::uint64_t>(approximant_->degree)
                                     : query_cost(beta, 0.0)) {}

CoinSpec CoinSpec::ideal(Hamiltonian h, double beta) {
  check_beta(beta);
  check_unit_spectrum(h);
  return CoinSpec(std::move(h), beta, 0.0, std::nullopt);
}

CoinSpec CoinSpec::approximate(Hamiltonian h, double beta, double eps_prime) {
  check_beta(beta);
  check_unit_spectrum(h);
  if (eps_prime == 0.0) {
    return ideal(std::move(h), beta);
  }
  ChebyshevApproximant approx = certified_approximant(beta, eps_prime);
  return CoinSpec(std::move(h), beta, eps_prime, std::move(approx));
}

CoinSpec CoinSpec::with_approximant(Hamiltonian h, double beta, double eps_prime,
                                    ChebyshevApproximant approx) {
  check_beta(beta);
  check_unit_spectrum(h);
  if (!(eps_prime > 0.0) || eps_prime > 1.0) {
    throw InputError("approximate coin needs eps_prime in (0, 1]");
  }
  if (approx.target_beta != beta) {
    throw InputError("approximant targets beta " + std::to_string(approx.target_beta) +
                     ", coin uses " + std::to_string(beta));
  }
  if (approx.certified_error > eps_prime) {
    throw InputError("approximant certified error " + std::to_string(approx.certified_error) +
                     " exceeds eps_prime " + std::to_string(eps_prime));
  }
  return CoinSpec(std::move(h), beta, eps_prime, std::move(approx));
}

double CoinSpec::alpha() const { return std::exp(-beta_ / 2.0); }

double success_probability(const CoinSpec& spec) {
  const Hamiltonian& h = spec.hamiltonian();
  const RealVector& values = h.eigenvalues();
  RealVector block(values.size());
  if (spec.is_ideal()) {
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      block(k) = std::exp(-spec.beta() * (1.0 + values(k)) / 2.0);
    }
  } else {
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      block(k) = spec.approximant()->evaluate_subnormalized(values(k));
    }
  }
  return frobenius_probability(h, block);
}

std::uint64_t TossStream::heads() const {
  return static_cast<std::uint64_t>(std::count(outcomes.begin(), outcomes.end(), Outcome::kHeads));
}

TossStream toss(const CoinSpec& spec, std::uint64_t count, std::uint64_t seed) {
  const double p = success_probability(spec);
  const std::uint64_t q = spec.queries_per_toss();
  TossStream stream;
  stream.seed = seed;
  stream.outcomes.reserve(count);
  stream.cumulative_queries.reserve(count);
  Rng rng(seed);
  for (std::uint64_t j = 0; j < count; ++j) {
    stream.outcomes.push_back(rng.bernoulli(p) ? Outcome::kHeads : Outcome::kTails);
    stream.queries_consumed += q;
    stream.cumulative_queries.push_back(stream.queries_consumed);
  }
  return stream;
}

std::uint64_t count_heads(const CoinSpec& spec, std::uint64_t count, std::uint64_t seed) {
  const double p = success_probability(spec);
  Rng rng(seed);
  std::uint64_t heads = 0;
  for (std::uint64_t j = 0; j < count; ++j) {
    heads += rng.bernoulli(p) ? 1 : 0;
  }
  return heads;
}

void write_toss_csv(std::ostream& out, const TossStream& stream) {
  out << "index,outcome,cumulative_queries\n";
  for (std::size_t j = 0; j < stream.outcomes.size(); ++j) {
    out << j << ',' << static_cast<int>(stream.outcomes[j]) << ','
        << stream.cumulative_queries[j] << '\n';
  }
}

std::uint64_t query_cost(double beta, double eps_prime) {
  const double eps = eps_prime > 0.0 ? eps_prime : kIdealEpsFloor;
  return static_cast<std::uint64_t>(required_degree(beta, eps));
}

double Schedule::width(int k) const {
  if (k < 1 || k > steps()) {
    throw InputError("schedule step " + std::to_string(k) + " outside [1, " +
                     std::to_string(steps()) + "]");
  }
  const auto uk = static_cast<std::size_t>(k);
  return betas[uk] - betas[uk - 1];
}

void Schedule::validate() const {
  if (betas.size() < 2 || per_step_eps.size() + 1 != betas.size()) {
    throw InputError("schedule needs l >= 1 steps and l + 1 inverse temperatures");
  }
  if (betas.front() != 0.0) {
    throw InputError("schedule must start at beta_0 = 0");
  }
  for (std::size_t k = 1; k < betas.size(); ++k) {
    if (!(betas[k] >= betas[k - 1]) || !std::isfinite(betas[k])) {
      throw InputError("schedule inverse temperatures must be non-decreasing");
    }
  }
  for (double eps : per_step_eps) {
    if (!(eps >= 0.0) || eps > 1.0) {
      throw InputError("per-step eps must lie in [0, 1]");
    }
  }
}

Schedule uniform_schedule(double beta, int l, double eps_total) {
  check_beta(beta);
  if (l < 1) {
    throw InputError("schedule needs l >= 1");
  }
  Schedule s;
  s.betas.resize(static_cast<std::size_t>(l) + 1);
  for (int k = 0; k <= l; ++k) {
    s.betas[static_cast<std::size_t>(k)] = k * (beta / 2.0) / l;
  }
  s.betas.back() = beta / 2.0;
  s.per_step_eps.assign(static_cast<std::size_t>(l), eps_total / l);
  s.validate();
  return s;
}

Schedule equal_probability_schedule(const Hamiltonian& h, double beta, int l,
                                    double eps_total) {
  Schedule s = uniform_schedule(beta, l, eps_total);
  check_unit_spectrum(h);
  const double log_total = std::log(ideal_success_probability(h, beta));
  if (log_total == 0.0) {
    return s;
  }
  // log p_ideal(2b) is non-increasing in b; solve log p_ideal(2 beta_k) = (k/l) log p_total.
  for (int k = 1; k < l; ++k) {
    const double target = log_total * k / l;
    double lo = s.betas[static_cast<std::size_t>(k) - 1];
    double hi = beta / 2.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (std::log(ideal_success_probability(h, 2.0 * mid)) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    s.betas[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
  }
  s.validate();
  return s;
}

double step_success_probability(const Hamiltonian& h, const Schedule& schedule, int k) {
  schedule.validate();
  check_unit_spectrum(h);
  const double width = schedule.width(k);
  if (width == 0.0) {
    return 1.0;
  }
  const auto uk = static_cast<std::size_t>(k);
  return ideal_success_probability(h, 2.0 * schedule.betas[uk]) /
         ideal_success_probability(h, 2.0 * schedule.betas[uk - 1]);
}

std::uint64_t step_query_cost(const Schedule& schedule, int k) {
  return query_cost(2.0 * schedule.width(k),
                    schedule.per_step_eps[static_cast<std::size_t>(k) - 1]);
}

double expected_queries_per_success(const Hamiltonian& h, const Schedule& schedule) {
  schedule.validate();
  const int l = schedule.steps();
  double total = 0.0;
  double suffix_probability = 1.0;
  for (int j = l; j >= 1; --j) {
    suffix_probability *= step_success_probability(h, schedule, j);
    total += static_cast<double>(step_query_cost(schedule, j)) / suffix_probability;
  }
  return total;
}

double average_query_bound(const Hamiltonian& h, const Schedule& schedule) {
  schedule.validate();
  const int l = schedule.steps();
  double min_p = 1.0;
  std::uint64_t max_q = 0;
  for (int k = 1; k <= l; ++k) {
    min_p = std::min(min_p, step_success_probability(h, schedule, k));
    max_q = std::max(max_q, step_query_cost(schedule, k));
  }
  // 2^{jb} = min_p^{-j}
  double sum = 0.0;
  double term = 1.0;
  for (int j = 1; j <= l; ++j) {
    term /= min_p;
    sum += term;
  }
  return static_cast<double>(max_q) * sum;
}

double FragmentedRun::queries_per_success() const {
  return successes == 0 ? 0.0
                        : static_cast<double>(stream.queries_consumed) /
                              static_cast<double>(successes);
}

FragmentedRun toss_fragmented(const Hamiltonian& h, const Schedule& schedule,
                              std::uint64_t target_successes, std::uint64_t seed) {
  schedule.validate();
  check_unit_spectrum(h);
  const int l = schedule.steps();
  std::vector<double> p(static_cast<std::size_t>(l));
  std::vector<std::uint64_t> q(static_cast<std::size_t>(l));
  for (int k = 1; k <= l; ++k) {
    p[static_cast<std::size_t>(k) - 1] = step_success_probability(h, schedule, k);
    q[static_cast<std::size_t>(k) - 1] = step_query_cost(schedule, k);
  }
  FragmentedRun run;
  run.stream.seed = seed;
  run.step_attempts.assign(static_cast<std::size_t>(l), 0);
  run.step_successes.assign(static_cast<std::size_t>(l), 0);
  Rng rng(seed);
  while (run.successes < target_successes) {
    bool completed = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
      ++run.step_attempts[k];
      run.stream.queries_consumed += q[k];
      if (!rng.bernoulli(p[k])) {
        completed = false;
        break;
      }
      ++run.step_successes[k];
    }
    run.stream.outcomes.push_back(completed ? Outcome::kHeads : Outcome::kTails);
    run.stream.cumulative_queries.push_back(run.stream.queries_consumed);
    if (completed) {
      ++run.successes;
    } else {
      ++run.restarts;
    }
  }
  return run;
}

double schedule_size_lower_bound(int n_qubits, double beta, double z_beta, double b) {
  if (!(b > 0.0)) {
    throw InputError("schedule_size_lower_bound needs b > 0");
  }
  if (!(z_beta > 0.0)) {
    throw InputError("schedule_size_lower_bound needs Z > 0");
  }
  return (n_qubits + beta * std::numbers::log2e - std::log2(z_beta)) / b;
}

}  // namespace qcoin
