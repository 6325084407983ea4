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

#ifndef QCOIN_EXPERIMENT_HPP
#define QCOIN_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcoin/config.hpp"
#include "qcoin/estimators.hpp"
#include "qcoin/hamiltonian.hpp"
#include "qcoin/noise.hpp"

namespace qcoin {

inline constexpr int kSweepCsvVersion = 1;

/// Runs fn(0) ... fn(n-1) on up to `workers` threads (0 = hardware
/// concurrency). Each index is visited exactly once; callers write results
/// into per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned workers = 0);

/// derive_seed(derive_seed(seed, a), b).
std::uint64_t task_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

struct Instance {
  ModelSpec spec;
  Hamiltonian raw;
  Hamiltonian unit;  // raw / lambda
  double lambda = 0.0;
};

/// Instance i is generated from task_seed(config.seed, 0, i).
std::vector<ModelSpec> generate_instances(const ExperimentConfig& config);

Instance prepare_instance(const ModelSpec& spec);

std::vector<Instance> build_instances(const ExperimentConfig& config);

struct SweepRow {
  int instance = -1;  // -1 marks an instance-averaged row
  double beta = 0.0;
  double lambda = 0.0;  // NaN on averaged rows
  double z_exact = 0.0;
  double p_exact = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t heads = 0;
  double p_hat = 0.0;
  double p_hat_sigma = 0.0;
  // Noise columns; NaN when the config has no xi.
  int layers = 0;
  double p_noisy_exact = 0.0;
  std::uint64_t noisy_heads = 0;
  double p_noisy_hat = 0.0;
  double p_noisy_sigma = 0.0;
  double p_mitigated = 0.0;
  double mitigated_sigma = 0.0;
  bool clamped = false;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // instance-major, then one averaged row per beta
  bool noisy = false;
  std::uint64_t config_hash = 0;
};

SweepResult run_sweep(const ExperimentConfig& config);

/// Fraction of rows (instance or averaged) whose mitigated value lies within
/// `k` propagated sigmas of the exact value.
double mitigated_agreement(const SweepResult& result, bool averaged_rows, double k = 2.0);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
nlohmann::json sweep_summary(const SweepResult& result, const ExperimentConfig& config);

struct CoverageCell {
  int instance = 0;
  double beta = 0.0;
  double z_exact = 0.0;
  int repetitions = 0;
  int covered = 0;
  double mean_relative_error = 0.0;
  double mean_samples = 0.0;
  double mean_queries = 0.0;
  double predicted_samples = 0.0;        // per repetition
  double predicted_samples_sigma = 0.0;  // standard error of mean_samples; 0 when fixed
  double median_rounds = 0.0;            // iterative only
  double predicted_rounds = 0.0;         // log2(Z_max / Z), iterative only
  std::uint64_t seed = 0;

  double coverage() const { return repetitions ? static_cast<double>(covered) / repetitions : 0.0; }
};

struct CoverageReport {
  Algorithm algorithm = Algorithm::kSuccessProbability;
  double eps_r = 0.0;
  double delta = 0.0;
  std::vector<CoverageCell> cells;
  std::uint64_t config_hash = 0;

  double coverage() const;
};

/// Repeats the chosen estimator `config.repetitions` times per
/// (instance, beta) cell and counts relative errors <= eps_r. Algorithm 1
/// uses sample_count_thm1 with the exact Z.
CoverageReport run_coverage(const ExperimentConfig& config, Algorithm algorithm);

nlohmann::json coverage_to_json(const CoverageReport& report, const ExperimentConfig& config);

struct CurvePoint {
  int depth = 0;
  double fitted = 0.0;
  double sigma = 0.0;  // from the parameter sigmas
};

struct NoiseFitReport {
  NoiseFit fit;
  std::vector<CurvePoint> curve;  // every integer depth in [min, max]
};

NoiseFitReport run_noise_fit(const LayerSeries& series, const FitOptions& options = {});

nlohmann::json noise_fit_to_json(const NoiseFitReport& report);
void write_fit_curve_csv(std::ostream& out, const NoiseFitReport& report);

struct FragmentRow {
  int instance = 0;
  double beta = 0.0;
  int steps = 0;
  std::string schedule;  // "uniform" or "equal_probability"
  double p_total = 0.0;
  double p_unfragmented = 0.0;
  double min_step_p = 0.0;
  double b = 0.0;  // -log2(min_step_p)
  double size_lower_bound = 0.0;
  double expected_queries = 0.0;
  double query_bound = 0.0;
  double unfragmented_queries = 0.0;  // q(beta, eps') / p
  std::uint64_t traversals = 0;
  std::uint64_t attempts = 0;
  double empirical_queries = 0.0;
  std::uint64_t seed = 0;
};

/// Cost study of uniform and equal-probability schedules for each
/// (instance, beta, steps); `shots` successful traversals are sampled.
std::vector<FragmentRow> run_fragment(const ExperimentConfig& config);

void write_fragment_csv(std::ostream& out, const std::vector<FragmentRow>& rows,
                        std::uint64_t config_hash);

}  // namespace qcoin

#endif  // QCOIN_EXPERIMENT_HPP
