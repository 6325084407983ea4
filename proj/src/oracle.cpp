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

#include "qcoin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qcoin/errors.hpp"

namespace qcoin {
namespace {

double neumaier_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  double sum = 0.0;
  double compensation = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      compensation += (sum - next) + t;
    } else {
      compensation += (t - next) + sum;
    }
    sum = next;
  }
  return sum + compensation;
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InputError("beta must be finite and >= 0");
  }
}

}  // namespace

double exact_partition_function(const Hamiltonian& h, double beta) {
  check_beta(beta);
  const RealVector& values = h.eigenvalues();
  std::vector<double> terms(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    terms[static_cast<std::size_t>(k)] = std::exp(-beta * values(k));
  }
  return neumaier_sum(std::move(terms));
}

double log_partition_function(const Hamiltonian& h, double beta) {
  check_beta(beta);
  const RealVector& values = h.eigenvalues();
  const double ground = values(0);
  std::vector<double> terms(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    terms[static_cast<std::size_t>(k)] = std::exp(-beta * (values(k) - ground));
  }
  return -beta * ground + std::log(neumaier_sum(std::move(terms)));
}

double exact_free_energy(const Hamiltonian& h, double beta) {
  if (!(beta > 0.0)) {
    throw InputError("free energy needs beta > 0");
  }
  return -log_partition_function(h, beta) / beta;
}

double ideal_success_probability(const Hamiltonian& h, double beta) {
  check_beta(beta);
  const RealVector& values = h.eigenvalues();
  std::vector<double> terms(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    terms[static_cast<std::size_t>(k)] = std::exp(-beta * (1.0 + values(k)));
  }
  return neumaier_sum(std::move(terms)) / static_cast<double>(values.size());
}

GeometricStats geometric_stats(double p) {
  if (!(p > 0.0) || p > 1.0) {
    throw InputError("geometric_stats needs 0 < p <= 1");
  }
  return {1.0 / p, (1.0 - p) / (p * p)};
}

OracleReport oracle_report(const Hamiltonian& h, double beta) {
  OracleReport report;
  report.beta = beta;
  report.z_beta = exact_partition_function(h, beta);
  report.free_energy =
      beta > 0.0 ? exact_free_energy(h, beta) : std::numeric_limits<double>::quiet_NaN();
  report.p_suc_ideal = ideal_success_probability(h, beta);
  report.mean_trials = 1.0 / report.p_suc_ideal;
  return report;
}

}  // namespace qcoin
