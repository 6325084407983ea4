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

#include "qcoin/noise.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "qcoin/errors.hpp"
#include "qcoin/rng.hpp"

namespace qcoin {
namespace {

TEST(NoisyProbability, Examples) {
  for (int layers : {0, 1, 10, 100}) {
    EXPECT_EQ(noisy_success_probability(0.3, 0.0, layers), 0.3);
    EXPECT_DOUBLE_EQ(noisy_success_probability(0.5, 0.2, layers), 0.5);
  }
  const double s = std::pow(0.963, 10);
  EXPECT_NEAR(noisy_success_probability(0.38, 0.037, 10), (1.0 - s) / 2.0 + s * 0.38, 1e-15);
  EXPECT_NEAR(noisy_success_probability(0.38, 0.037, 10), 0.4177, 5e-5);
  EXPECT_THROW(noisy_success_probability(1.2, 0.1, 3), InputError);
  EXPECT_THROW(noisy_success_probability(0.2, -0.1, 3), InputError);
  EXPECT_THROW(noisy_success_probability(0.2, 0.1, -1), InputError);
}

TEST(NoisyProbability, MonotoneContraction) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u;
  std::uniform_int_distribution<int> l(0, 60);
  for (int trial = 0; trial < 10000; ++trial) {
    const double p = u(gen), xi = u(gen);
    const int layers = l(gen);
    EXPECT_NEAR(std::abs(noisy_success_probability(p, xi, layers) - 0.5),
                std::pow(1.0 - xi, layers) * std::abs(p - 0.5), 1e-14);
  }
}

TEST(NoisyProbability, DeepCircuitLimit) {
  for (double xi : {0.001, 0.037, 0.5}) {
    const int layers = static_cast<int>(std::min(1e6 / xi, 1e8));
    EXPECT_LT(std::abs(noisy_success_probability(0.9, xi, layers) - 0.5), 1e-6);
  }
}

TEST(SimulateNoisyTosses, Examples) {
  EXPECT_EQ(simulate_noisy_tosses(0.4, 0.1, 5, 0, 3), 0u);
  EXPECT_EQ(simulate_noisy_tosses(1.0, 0.0, 5, 1000, 3), 1000u);
  const std::uint64_t k = simulate_noisy_tosses(0.38, 0.037, 10, 3000, 2026);
  EXPECT_NEAR(static_cast<double>(k) / 3000.0, 0.4177, 0.03);
  EXPECT_EQ(k, simulate_noisy_tosses(0.38, 0.037, 10, 3000, 2026));
}

TEST(IdentityInsertion, Depths) {
  EXPECT_EQ(identity_insertion_depths(10, 5), (std::vector<int>{10, 12, 14, 16, 18, 20}));
  EXPECT_EQ(identity_insertion_depths(10, 0), (std::vector<int>{10}));
  EXPECT_EQ(identity_insertion_depths(1, 2), (std::vector<int>{1, 3, 5}));
  EXPECT_THROW(identity_insertion_depths(10, -1), InputError);
}

LayerSeries exact_series(double p, double xi, const std::vector<int>& depths) {
  LayerSeries s;
  s.depths = depths;
  for (int d : depths) s.measured_p.push_back(noisy_success_probability(p, xi, d));
  return s;
}

TEST(FitNoiseModel, ExactDataRoundTrip) {
  const LayerSeries s = exact_series(0.38, 0.037, identity_insertion_depths(10, 5));
  const NoiseFit fit = fit_noise_model(s);
  EXPECT_NEAR(fit.model.xi, 0.037, 1e-6);
  EXPECT_NEAR(fit.p_hat, 0.38, 1e-6);
  EXPECT_LT(fit.residual_norm, 1e-10);
  EXPECT_EQ(fit.weighting, FitWeighting::kUnweighted);
}

TEST(FitNoiseModel, ExactDataAcrossParameters) {
  for (double p : {0.05, 0.3, 0.7, 0.95}) {
    for (double xi : {0.005, 0.03, 0.1}) {
      const NoiseFit fit = fit_noise_model(exact_series(p, xi, identity_insertion_depths(4, 6)));
      EXPECT_NEAR(fit.model.xi, xi, 1e-6) << p << " " << xi;
      EXPECT_NEAR(fit.p_hat, p, 1e-6) << p << " " << xi;
    }
  }
}

TEST(FitNoiseModel, Preconditions) {
  LayerSeries two = exact_series(0.3, 0.05, {10, 12});
  EXPECT_THROW(fit_noise_model(two), InputError);
  LayerSeries flat;
  flat.depths = {10, 12, 14};
  flat.measured_p = {0.5, 0.5, 0.5};
  EXPECT_THROW(fit_noise_model(flat), FitError);
  try {
    fit_noise_model(flat);
  } catch (const FitError& e) {
    EXPECT_TRUE(std::isnan(e.best_xi()));
  }
  LayerSeries bad = exact_series(0.3, 0.05, {10, 12, 14});
  bad.depths = {10, 14, 12};
  EXPECT_THROW(fit_noise_model(bad), InputError);
  bad = exact_series(0.3, 0.05, {10, 12, 14});
  bad.measured_p.pop_back();
  EXPECT_THROW(fit_noise_model(bad), InputError);
  bad = exact_series(0.3, 0.05, {10, 12, 14});
  FitOptions options;
  options.weighting = FitWeighting::kBinomial;
  EXPECT_THROW(fit_noise_model(bad, options), InputError);
}

TEST(FitNoiseModel, IterationCapIsRuntimeErrorWithBestSoFar) {
  const LayerSeries s = simulate_layer_series(0.38, 0.037, identity_insertion_depths(10, 5), 3000, 4);
  FitOptions options;
  options.max_iterations = 1;
  try {
    fit_noise_model(s, options);
    FAIL() << "expected FitError";
  } catch (const FitError& e) {
    EXPECT_GE(e.best_xi(), 0.0);
    EXPECT_LE(e.best_xi(), 1.0);
    EXPECT_GE(e.best_p(), 0.0);
    EXPECT_LE(e.best_p(), 1.0);
  }
}

TEST(FitNoiseModel, HardwareScaleCoverage) {
  const std::vector<int> depths = identity_insertion_depths(10, 5);
  int covered = 0;
  int wide = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const LayerSeries s =
        simulate_layer_series(0.38, 0.037, depths, 3000, derive_seed(808, static_cast<std::uint64_t>(t)));
    const NoiseFit fit = fit_noise_model(s);
    if (std::abs(fit.model.xi - 0.037) <= 2.0 * fit.model.xi_sigma) ++covered;
    if (fit.model.xi_sigma / fit.model.xi > 0.5) ++wide;
  }
  EXPECT_GE(covered, static_cast<int>(0.9 * trials));
  EXPECT_GE(wide, static_cast<int>(0.1 * trials));
}

TEST(FitNoiseModel, UnweightedOptionReportsResidualVarianceSigma) {
  const LayerSeries s = simulate_layer_series(0.38, 0.037, identity_insertion_depths(10, 5), 3000, 12);
  FitOptions options;
  options.weighting = FitWeighting::kUnweighted;
  const NoiseFit fit = fit_noise_model(s, options);
  EXPECT_EQ(fit.weighting, FitWeighting::kUnweighted);
  EXPECT_GT(fit.model.xi_sigma, 0.0);
  EXPECT_TRUE(std::isfinite(fit.model.xi_sigma));
  EXPECT_EQ(fit_noise_model(s).weighting, FitWeighting::kBinomial);
}

TEST(FitNoiseModel, MoreShotsShrinkError) {
  const std::vector<int> depths = identity_insertion_depths(10, 5);
  std::vector<double> low, high;
  for (int t = 0; t < 101; ++t) {
    const std::uint64_t seed = derive_seed(909, static_cast<std::uint64_t>(t));
    low.push_back(std::abs(fit_noise_model(simulate_layer_series(0.38, 0.037, depths, 3000, seed)).model.xi - 0.037));
    high.push_back(std::abs(fit_noise_model(simulate_layer_series(0.38, 0.037, depths, 300000, seed)).model.xi - 0.037));
  }
  std::nth_element(low.begin(), low.begin() + 50, low.end());
  std::nth_element(high.begin(), high.begin() + 50, high.end());
  EXPECT_GE(low[50] / high[50], 5.0);
}

TEST(Mitigate, Examples) {
  EXPECT_EQ(mitigate(0.3, {0.0, 0.0}, 10).value, 0.3);
  EXPECT_NEAR(mitigate(noisy_success_probability(0.38, 0.037, 10), {0.037, 0.0}, 10).value, 0.38,
              1e-12);
  EXPECT_NEAR(mitigate(0.4177, {0.037, 0.0}, 10).value, 0.38, 2e-4);
  EXPECT_THROW(mitigate(0.3, {1.0, 0.0}, 10), InputError);
}

TEST(Mitigate, ClampsWithFlag) {
  const Mitigated low = mitigate(0.1, {0.1, 0.0}, 10);
  EXPECT_EQ(low.value, 0.0);
  EXPECT_TRUE(low.clamped);
  const Mitigated high = mitigate(0.9, {0.1, 0.0}, 10);
  EXPECT_EQ(high.value, 1.0);
  EXPECT_TRUE(high.clamped);
  EXPECT_FALSE(mitigate(0.45, {0.1, 0.0}, 10).clamped);
}

TEST(Mitigate, RoundTripProperty) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u;
  std::uniform_real_distribution<double> xi_dist(0.0, 0.2);
  std::uniform_int_distribution<int> l(0, 20);
  for (int trial = 0; trial < 10000; ++trial) {
    const double p = u(gen), xi = xi_dist(gen);
    const int layers = l(gen);
    EXPECT_NEAR(mitigate(noisy_success_probability(p, xi, layers), {xi, 0.0}, layers).value, p,
                1e-12);
  }
}

TEST(PropagateUncertainty, Examples) {
  EXPECT_NEAR(propagate_uncertainty(0.42, 0.01, {0.037, 0.0}, 10), 0.01 / std::pow(0.963, 10),
              1e-15);
  EXPECT_EQ(propagate_uncertainty(0.42, 0.0, {0.037, 0.0}, 10), 0.0);
  EXPECT_THROW(propagate_uncertainty(0.42, -0.1, {0.037, 0.0}, 10), InputError);
}

TEST(PropagateUncertainty, MatchesCentralDifferences) {
  const double measured = 0.4177, sigma_p = 0.009, xi = 0.037, sigma_xi = 0.028;
  const int layers = 10;
  const double h = 1e-6;
  auto raw = [&](double m, double x) {
    const double s = std::pow(1.0 - x, layers);
    return (m - (1.0 - s) / 2.0) / s;
  };
  const double d_m = (raw(measured + h, xi) - raw(measured - h, xi)) / (2.0 * h);
  const double d_xi = (raw(measured, xi + h) - raw(measured, xi - h)) / (2.0 * h);
  const double numeric = std::hypot(d_m * sigma_p, d_xi * sigma_xi);
  const double analytic = propagate_uncertainty(measured, sigma_p, {xi, sigma_xi}, layers);
  EXPECT_NEAR(analytic / numeric, 1.0, 0.05);
}

TEST(LayerSeriesCsv, RoundTrip) {
  const LayerSeries s = simulate_layer_series(0.38, 0.037, identity_insertion_depths(10, 5), 3000, 5);
  std::stringstream buffer;
  write_layer_series_csv(buffer, s);
  const std::string text = buffer.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "layers,successes,shots");
  const LayerSeries back = read_layer_series_csv(buffer);
  EXPECT_EQ(back.depths, s.depths);
  EXPECT_EQ(back.shots_per_point, 3000u);
  for (std::size_t i = 0; i < s.depths.size(); ++i) {
    EXPECT_DOUBLE_EQ(back.measured_p[i], s.measured_p[i]);
  }
}

TEST(LayerSeriesCsv, RejectsMalformed) {
  std::istringstream bad_header("depth,k,n\n10,1,2\n");
  EXPECT_THROW(read_layer_series_csv(bad_header), InputError);
  std::istringstream bad_row("layers,successes,shots\n10,x,3000\n");
  EXPECT_THROW(read_layer_series_csv(bad_row), InputError);
  std::istringstream too_many("layers,successes,shots\n10,3001,3000\n");
  EXPECT_THROW(read_layer_series_csv(too_many), InputError);
  std::istringstream mixed("layers,successes,shots\n10,1,3000\n12,1,2000\n14,1,3000\n");
  EXPECT_THROW(read_layer_series_csv(mixed), InputError);
}

}  // namespace
}  // namespace qcoin
