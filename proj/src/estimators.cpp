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

#include "qcoin/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcoin/errors.hpp"
#include "qcoin/rng.hpp"

namespace qcoin {
namespace {

// Sample counts are rounded up; the guard keeps products that are integers
// in exact arithmetic (e.g. 1/(0.25 * 0.2^2) = 100) from gaining one.
std::uint64_t ceil_count(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw InputError("sample count is not a finite non-negative number");
  }
  return static_cast<std::uint64_t>(std::ceil(x * (1.0 - 1e-12)));
}

void check_unit_interval(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0)) {
    throw InputError(std::string(name) + " must lie in (0, 1)");
  }
}

double scale_factor(const CoinSpec& spec) {
  return std::ldexp(std::exp(spec.beta()), spec.hamiltonian().n_qubits());
}

// Acklam's rational approximation of the standard normal quantile.
double normal_quantile_approx(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - kLow) {
    return -normal_quantile_approx(1.0 - p);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSuccessProbability:
      return "alg1";
    case Algorithm::kTrialsToSuccess:
      return "alg2";
    case Algorithm::kIterative:
      return "iterative";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "alg1") return Algorithm::kSuccessProbability;
  if (name == "alg2") return Algorithm::kTrialsToSuccess;
  if (name == "iterative") return Algorithm::kIterative;
  throw InputError("unknown algorithm '" + std::string(name) + "'");
}

double z_quantile(double delta) {
  check_unit_interval(delta, "delta");
  // Work in the lower tail, where delta/2 is representable without
  // cancellation, and flip the sign at the end.
  const double tail = delta / 2.0;
  double x = normal_quantile_approx(tail);
  const double error = 0.5 * std::erfc(-x / std::numbers::sqrt2) - tail;
  x -= error * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return -x;
}

AcResult ac_estimate(std::uint64_t successes, std::uint64_t tosses, double delta) {
  if (tosses == 0) {
    throw InputError("ac_estimate needs at least one toss");
  }
  if (successes > tosses) {
    throw InputError("ac_estimate: more successes than tosses");
  }
  const double z = z_quantile(delta);
  const double z2 = z * z;
  const auto s = static_cast<double>(tosses);
  AcResult out;
  out.p_hat = (static_cast<double>(successes) + z2 / 2.0) / (s + z2);
  out.eps_p = z * std::sqrt(out.p_hat * (1.0 - out.p_hat) / s);
  return out;
}

std::uint64_t sample_count_thm1(int n_qubits, double beta, double z_lower_bound,
                                double eps_r, double delta) {
  check_unit_interval(eps_r, "eps_r");
  if (!(z_lower_bound > 0.0)) {
    throw InputError("sample_count_thm1 needs a positive lower bound on Z");
  }
  const double z = z_quantile(delta);
  return ceil_count(8.0 * z * z / (eps_r * eps_r) * std::ldexp(std::exp(beta), n_qubits) /
                    z_lower_bound);
}

Estimate algorithm1(const CoinSpec& spec, std::uint64_t tosses, double delta,
                    std::uint64_t seed) {
  if (tosses == 0) {
    throw InputError("algorithm1 needs at least one toss");
  }
  const std::uint64_t heads = count_heads(spec, tosses, seed);
  const AcResult ac = ac_estimate(heads, tosses, delta);
  const double scale = scale_factor(spec);
  Estimate est;
  est.value = scale * ac.p_hat;
  est.half_width = scale * ac.eps_p;
  est.relative_target = est.half_width / est.value;
  est.confidence = 1.0 - delta;
  est.samples_used = tosses;
  est.queries_used = tosses * spec.queries_per_toss();
  est.algorithm = Algorithm::kSuccessProbability;
  return est;
}

Alg2Result algorithm2(const CoinSpec& spec, std::uint64_t target_successes, double delta,
                      std::uint64_t seed) {
  if (target_successes == 0) {
    throw InputError("algorithm2 needs at least one success");
  }
  check_unit_interval(delta, "delta");
  const double p = success_probability(spec);
  if (!(p > 0.0)) {
    throw InputError("algorithm2: coin never lands heads");
  }
  Rng rng(seed);
  Alg2Result out;
  out.trials.r_values.reserve(target_successes);
  std::uint64_t total = 0;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t j = 0; j < target_successes; ++j) {
    const std::uint64_t r = rng.geometric(p);
    out.trials.r_values.push_back(r);
    total += r;
    // Welford update for the sample variance.
    const double delta_mean = static_cast<double>(r) - mean;
    mean += delta_mean / static_cast<double>(j + 1);
    m2 += delta_mean * (static_cast<double>(r) - mean);
  }
  out.trials.successes = target_successes;
  const auto count = static_cast<double>(target_successes);
  const double r_bar = static_cast<double>(total) / count;
  const double scale = scale_factor(spec);
  const double guaranteed_relative = 1.0 / std::sqrt(delta * count);

  Estimate& est = out.estimate;
  est.value = scale / r_bar;
  est.half_width = guaranteed_relative * est.value;
  est.relative_target = guaranteed_relative;
  est.confidence = 1.0 - delta;
  est.samples_used = total;
  est.queries_used = total * spec.queries_per_toss();
  est.algorithm = Algorithm::kTrialsToSuccess;

  const double variance = target_successes > 1 ? m2 / (count - 1.0) : 0.0;
  const double r_error = z_quantile(delta) * std::sqrt(variance / count);
  // First-order propagation through Z = scale / R: dZ = Z dR / R.
  out.empirical_half_width = est.value * r_error / r_bar;
  return out;
}

std::uint64_t success_count_thm2(double eps_r, double delta) {
  check_unit_interval(eps_r, "eps_r");
  check_unit_interval(delta, "delta");
  return ceil_count(1.0 / (delta * eps_r * eps_r));
}

double expected_total_tosses_thm2(int n_qubits, double beta, double z_beta, double eps_r,
                                  double delta) {
  check_unit_interval(eps_r, "eps_r");
  check_unit_interval(delta, "delta");
  if (!(z_beta > 0.0)) {
    throw InputError("expected_total_tosses_thm2 needs Z > 0");
  }
  return std::ldexp(std::exp(beta), n_qubits) / (delta * eps_r * eps_r * z_beta);
}

IterativeResult relative_from_additive(const AdditiveRunner& runner, double z_max,
                                       double eps_r, double delta, int max_rounds) {
  check_unit_interval(eps_r, "eps_r");
  check_unit_interval(delta, "delta");
  if (!(z_max > 0.0)) {
    throw InputError("relative_from_additive needs z_max > 0");
  }
  if (max_rounds < 1) {
    throw InputError("relative_from_additive needs max_rounds >= 1");
  }
  std::uint64_t samples = 0;
  std::uint64_t queries = 0;
  for (int r = 1; r <= max_rounds; ++r) {
    const double threshold = std::ldexp(z_max, -r);
    const double eps = eps_r * threshold;
    const double delta_round = 6.0 / (std::numbers::pi * std::numbers::pi) * delta /
                               (static_cast<double>(r) * r);
    const Estimate step = runner(eps, delta_round, r);
    samples += step.samples_used;
    queries += step.queries_used;
    if (step.value > threshold) {
      IterativeResult out;
      out.rounds = r;
      out.estimate = step;
      out.estimate.half_width = eps;
      out.estimate.relative_target = eps_r;
      out.estimate.confidence = 1.0 - delta;
      out.estimate.samples_used = samples;
      out.estimate.queries_used = queries;
      out.estimate.algorithm = Algorithm::kIterative;
      return out;
    }
  }
  throw RuntimeError("relative_from_additive: no stop after " + std::to_string(max_rounds) +
                     " rounds");
}

AdditiveRunner algorithm1_additive_runner(const CoinSpec& spec, std::uint64_t seed) {
  return [spec, seed](double eps, double delta_step, int round) {
    const double eps_p = eps / scale_factor(spec);
    const double z = z_quantile(delta_step);
    const std::uint64_t tosses = std::max<std::uint64_t>(1, ceil_count(z * z / (4.0 * eps_p * eps_p)));
    return algorithm1(spec, tosses, delta_step,
                      derive_seed(seed, static_cast<std::uint64_t>(round)));
  };
}

double max_partition_function(int n_qubits, double beta) {
  return std::ldexp(std::exp(beta), n_qubits);
}

}  // namespace qcoin
