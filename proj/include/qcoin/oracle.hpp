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

#ifndef QCOIN_ORACLE_HPP
#define QCOIN_ORACLE_HPP

#include "qcoin/hamiltonian.hpp"

namespace qcoin {

/// Brute-force ground truth for one (H, beta) pair.
struct OracleReport {
  double beta = 0.0;
  double z_beta = 0.0;
  double free_energy = 0.0;  // NaN at beta = 0
  double p_suc_ideal = 0.0;
  double mean_trials = 0.0;
};

/// Tr exp(-beta H) from the cached spectrum. Terms are summed in ascending
/// magnitude with Neumaier compensation.
double exact_partition_function(const Hamiltonian& h, double beta);

/// log Tr exp(-beta H) via a shifted log-sum-exp; finite for any beta.
double log_partition_function(const Hamiltonian& h, double beta);

/// -log(Z) / beta. Throws InputError for beta <= 0.
double exact_free_energy(const Hamiltonian& h, double beta);

/// Z_beta / (e^beta 2^n) = 2^-n sum_lambda exp(-beta (1 + lambda)), evaluated
/// in that form so that large beta does not overflow.
double ideal_success_probability(const Hamiltonian& h, double beta);

struct GeometricStats {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean 1/p and variance (1 - p)/p^2 of the trials-until-success variable.
/// Throws InputError unless 0 < p <= 1.
GeometricStats geometric_stats(double p);

OracleReport oracle_report(const Hamiltonian& h, double beta);

}  // namespace qcoin

#endif  // QCOIN_ORACLE_HPP
