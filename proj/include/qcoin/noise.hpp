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

#ifndef QCOIN_NOISE_HPP
#define QCOIN_NOISE_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

namespace qcoin {

/// Global depolarizing noise of strength xi after every circuit layer.
struct NoiseModel {
  double xi = 0.0;
  double xi_sigma = 0.0;

  /// Throws InputError unless 0 <= xi <= 1 and xi_sigma >= 0.
  void validate() const;
};

/// Measured success probabilities of one circuit at several depths.
struct LayerSeries {
  std::vector<int> depths;
  std::vector<double> measured_p;
  std::uint64_t shots_per_point = 0;  // 0 when unknown

  void validate() const;
};

/// (1 - (1-xi)^L)/2 + (1-xi)^L p. Each layer contracts p towards 1/2.
double noisy_success_probability(double p_ideal, double xi, int layers);

/// Binomial(shots, noisy_success_probability(p_ideal, xi, layers)).
std::uint64_t simulate_noisy_tosses(double p_ideal, double xi, int layers,
                                    std::uint64_t shots, std::uint64_t seed);

/// Synthetic identity-insertion data; point i is seeded with
/// derive_seed(seed, i).
LayerSeries simulate_layer_series(double p_ideal, double xi, const std::vector<int>& depths,
                                  std::uint64_t shots, std::uint64_t seed);

/// [base, base + 2, ..., base + 2 * insertions]: each inserted W W^dagger
/// pair adds two layers.
std::vector<int> identity_insertion_depths(int base_layers, int insertions);

enum class FitWeighting {
  kAuto,        // binomial when shots_per_point > 0, unweighted otherwise
  kBinomial,    // weights shots / (p(1-p)); covariance (J^T W J)^-1
  kUnweighted,  // covariance (J^T J)^-1 * RSS / (m - 2)
};

struct FitOptions {
  FitWeighting weighting = FitWeighting::kAuto;
  int max_iterations = 500;
};

struct NoiseFit {
  NoiseModel model;  // xi and its standard deviation
  double p_hat = 0.0;
  double p_sigma = 0.0;
  double residual_norm = 0.0;  // sqrt(sum (fitted - measured)^2), unweighted
  int iterations = 0;
  FitWeighting weighting = FitWeighting::kUnweighted;
};

/// Box-constrained least squares for (xi, p) in [0, 1]^2.
///
/// Levenberg-Marquardt damped Gauss-Newton with steps projected onto the
/// box. The first start is the two-point guess: xi from the decay ratio of
/// (p - 1/2) between the shallowest and deepest circuit and p from inverting
/// the shallowest point. A few fixed xi starts are also run and the lowest
/// cost wins. Throws InputError for fewer than three points, FitError when
/// every point equals 1/2 or the iteration cap is reached.
NoiseFit fit_noise_model(const LayerSeries& series, const FitOptions& options = {});

struct Mitigated {
  double value = 0.0;
  bool clamped = false;  // raw inverse fell outside [0, 1]
};

/// Inverts the depolarizing map: 1/2 + (measured - 1/2) / (1-xi)^L, clamped
/// to [0, 1]. Throws InputError when xi = 1.
Mitigated mitigate(double measured_p, const NoiseModel& model, int layers);

/// First-order standard deviation of the mitigated value from p_sigma and
/// model.xi_sigma (treated as independent).
double propagate_uncertainty(double measured_p, double p_sigma, const NoiseModel& model,
                             int layers);

/// CSV with header `layers,successes,shots`. All rows must share one shot
/// count. Throws InputError on malformed input.
LayerSeries read_layer_series_csv(std::istream& in);

void write_layer_series_csv(std::ostream& out, const LayerSeries& series);

}  // namespace qcoin

#endif  // QCOIN_NOISE_HPP
