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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "qcoin/errors.hpp"
#include "qcoin/rng.hpp"

namespace qcoin {
namespace {

struct Params {
  double xi;
  double p;
};

double survival(double xi, int layers) { return std::pow(1.0 - xi, layers); }

Params project(Params t) {
  return {std::clamp(t.xi, 0.0, 1.0), std::clamp(t.p, 0.0, 1.0)};
}

class Problem {
 public:
  Problem(const LayerSeries& series, FitWeighting weighting)
      : series_(series), weights_(series.depths.size(), 1.0) {
    if (weighting == FitWeighting::kBinomial) {
      const auto shots = static_cast<double>(series.shots_per_point);
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        // Smoothed proportion keeps the variance positive at 0 or shots.
        const double smoothed = (series.measured_p[i] * shots + 0.5) / (shots + 1.0);
        weights_[i] = std::sqrt(shots / (smoothed * (1.0 - smoothed)));
      }
    }
  }

  std::size_t size() const { return weights_.size(); }

  Eigen::VectorXd residuals(Params t) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
      r(static_cast<Eigen::Index>(i)) =
          weights_[i] * (noisy_success_probability(t.p, t.xi, series_.depths[i]) -
                         series_.measured_p[i]);
    }
    return r;
  }

  Eigen::MatrixXd jacobian(Params t) const {
    Eigen::MatrixXd j(static_cast<Eigen::Index>(size()), 2);
    for (std::size_t i = 0; i < size(); ++i) {
      const int layers = series_.depths[i];
      const auto row = static_cast<Eigen::Index>(i);
      j(row, 0) = weights_[i] * -layers * std::pow(1.0 - t.xi, layers - 1) * (t.p - 0.5);
      j(row, 1) = weights_[i] * survival(t.xi, layers);
    }
    return j;
  }

  double cost(Params t) const { return residuals(t).squaredNorm(); }

 private:
  const LayerSeries& series_;
  std::vector<double> weights_;
};

struct Solution {
  Params params;
  double cost;
  int iterations;
  bool converged;
};

Solution levenberg_marquardt(const Problem& problem, Params start, int max_iterations) {
  Params t = project(start);
  double cost = problem.cost(t);
  double lambda = 1e-3;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    if (cost <= 1e-32) {
      return {t, cost, iter, true};
    }
    const Eigen::MatrixXd j = problem.jacobian(t);
    const Eigen::VectorXd r = problem.residuals(t);
    const Eigen::Matrix2d jtj = j.transpose() * j;
    const Eigen::Vector2d gradient = j.transpose() * r;
    bool accepted = false;
    while (lambda < 1e16) {
      Eigen::Matrix2d damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::Vector2d step = damped.ldlt().solve(-gradient);
      const Params trial = project({t.xi + step(0), t.p + step(1)});
      const double trial_cost = problem.cost(trial);
      if (trial_cost < cost) {
        const double moved = std::hypot(trial.xi - t.xi, trial.p - t.p);
        const double improvement = cost - trial_cost;
        t = trial;
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (moved <= 1e-13 || improvement <= 1e-15 * cost) {
          return {t, cost, iter, true};
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No descent direction left at any damping: a (possibly boundary)
      // minimum.
      return {t, cost, iter, true};
    }
  }
  return {t, cost, max_iterations, false};
}

}  // namespace

void NoiseModel::validate() const {
  if (!(xi >= 0.0) || xi > 1.0) {
    throw InputError("noise strength xi must lie in [0, 1]");
  }
  if (!(xi_sigma >= 0.0)) {
    throw InputError("xi_sigma must be >= 0");
  }
}

void LayerSeries::validate() const {
  if (depths.size() != measured_p.size()) {
    throw InputError("layer series: depths and measured_p differ in length");
  }
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 1) {
      throw InputError("layer series: depths must be positive");
    }
    if (i > 0 && depths[i] <= depths[i - 1]) {
      throw InputError("layer series: depths must be strictly increasing");
    }
    if (!(measured_p[i] >= 0.0) || measured_p[i] > 1.0) {
      throw InputError("layer series: measured_p must lie in [0, 1]");
    }
  }
}

double noisy_success_probability(double p_ideal, double xi, int layers) {
  if (!(p_ideal >= 0.0) || p_ideal > 1.0) {
    throw InputError("p_ideal must lie in [0, 1]");
  }
  if (!(xi >= 0.0) || xi > 1.0) {
    throw InputError("xi must lie in [0, 1]");
  }
  if (layers < 0) {
    throw InputError("layer count must be >= 0");
  }
  const double s = survival(xi, layers);
  return (1.0 - s) / 2.0 + s * p_ideal;
}

std::uint64_t simulate_noisy_tosses(double p_ideal, double xi, int layers,
                                    std::uint64_t shots, std::uint64_t seed) {
  const double p = noisy_success_probability(p_ideal, xi, layers);
  Rng rng(seed);
  return rng.binomial(shots, p);
}

LayerSeries simulate_layer_series(double p_ideal, double xi, const std::vector<int>& depths,
                                  std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) {
    throw InputError("simulate_layer_series needs shots >= 1");
  }
  LayerSeries series;
  series.depths = depths;
  series.shots_per_point = shots;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    const std::uint64_t k = simulate_noisy_tosses(p_ideal, xi, depths[i], shots, derive_seed(seed, i));
    series.measured_p.push_back(static_cast<double>(k) / static_cast<double>(shots));
  }
  series.validate();
  return series;
}

std::vector<int> identity_insertion_depths(int base_layers, int insertions) {
  if (insertions < 0) {
    throw InputError("insertions must be >= 0");
  }
  if (base_layers < 1) {
    throw InputError("base layer count must be >= 1");
  }
  std::vector<int> depths;
  for (int i = 0; i <= insertions; ++i) {
    depths.push_back(base_layers + 2 * i);
  }
  return depths;
}

NoiseFit fit_noise_model(const LayerSeries& series, const FitOptions& options) {
  series.validate();
  const std::size_t m = series.depths.size();
  if (m < 3) {
    throw InputError("noise fit needs at least 3 depth points, got " + std::to_string(m));
  }
  const bool degenerate = std::all_of(series.measured_p.begin(), series.measured_p.end(),
                                      [](double p) { return p == 0.5; });
  if (degenerate) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    throw FitError("noise fit is degenerate: every point sits at the p = 1/2 fixed point",
                   nan, nan);
  }
  FitWeighting weighting = options.weighting;
  if (weighting == FitWeighting::kAuto) {
    weighting = series.shots_per_point > 0 ? FitWeighting::kBinomial : FitWeighting::kUnweighted;
  }
  if (weighting == FitWeighting::kBinomial && series.shots_per_point == 0) {
    throw InputError("binomial weighting needs shots_per_point > 0");
  }
  const Problem problem(series, weighting);

  // Two-point initial guess.
  const double first = series.measured_p.front() - 0.5;
  const double last = series.measured_p.back() - 0.5;
  const int span = series.depths.back() - series.depths.front();
  double xi0 = 0.01;
  if (first != 0.0 && last / first > 0.0 && last / first < 1.0) {
    xi0 = 1.0 - std::pow(last / first, 1.0 / span);
  }
  xi0 = std::clamp(xi0, 0.0, 0.999);
  const double p0 = std::clamp(0.5 + first / survival(xi0, series.depths.front()), 0.0, 1.0);

  std::vector<Params> starts = {{xi0, p0}};
  for (double xi : {0.001, 0.01, 0.05, 0.2}) {
    starts.push_back({xi, std::clamp(0.5 + first / survival(xi, series.depths.front()), 0.0, 1.0)});
  }
  Solution best{{0.0, 0.0}, std::numeric_limits<double>::infinity(), 0, false};
  Solution best_any = best;
  int total_iterations = 0;
  for (const Params& start : starts) {
    const Solution s = levenberg_marquardt(problem, start, options.max_iterations);
    total_iterations += s.iterations;
    if (s.converged && s.cost < best.cost) {
      best = s;
    }
    if (s.cost < best_any.cost) {
      best_any = s;
    }
  }
  if (!best.converged) {
    throw FitError("noise fit did not converge within " + std::to_string(options.max_iterations) +
                       " iterations",
                   best_any.params.xi, best_any.params.p);
  }

  NoiseFit fit;
  fit.model.xi = best.params.xi;
  fit.p_hat = best.params.p;
  fit.iterations = total_iterations;
  fit.weighting = weighting;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = noisy_success_probability(fit.p_hat, fit.model.xi, series.depths[i]) -
                     series.measured_p[i];
    rss += d * d;
  }
  fit.residual_norm = std::sqrt(rss);

  const Eigen::MatrixXd j = problem.jacobian(best.params);
  const Eigen::Matrix2d information = j.transpose() * j;
  const double inf = std::numeric_limits<double>::infinity();
  if (std::abs(information.determinant()) <= 1e-300) {
    fit.model.xi_sigma = inf;
    fit.p_sigma = inf;
    return fit;
  }
  Eigen::Matrix2d covariance = information.inverse();
  if (weighting == FitWeighting::kUnweighted) {
    covariance *= best.cost / static_cast<double>(m - 2);
  }
  fit.model.xi_sigma = std::sqrt(std::max(covariance(0, 0), 0.0));
  fit.p_sigma = std::sqrt(std::max(covariance(1, 1), 0.0));
  return fit;
}

Mitigated mitigate(double measured_p, const NoiseModel& model, int layers) {
  model.validate();
  if (model.xi == 1.0) {
    throw InputError("mitigate: xi = 1 maps every state to 1/2 and cannot be inverted");
  }
  if (layers < 0) {
    throw InputError("layer count must be >= 0");
  }
  const double s = survival(model.xi, layers);
  const double raw = (measured_p - (1.0 - s) / 2.0) / s;
  Mitigated out;
  out.value = std::clamp(raw, 0.0, 1.0);
  out.clamped = out.value != raw;
  return out;
}

double propagate_uncertainty(double measured_p, double p_sigma, const NoiseModel& model,
                             int layers) {
  model.validate();
  if (!(p_sigma >= 0.0)) {
    throw InputError("p_sigma must be >= 0");
  }
  if (model.xi == 1.0) {
    throw InputError("propagate_uncertainty: xi = 1 is singular");
  }
  const double s = survival(model.xi, layers);
  const double d_measured = 1.0 / s;
  const double d_xi = (measured_p - 0.5) * layers / (s * (1.0 - model.xi));
  const double a = d_measured * p_sigma;
  const double b = d_xi * model.xi_sigma;
  return std::sqrt(a * a + b * b);
}

LayerSeries read_layer_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError("layer series CSV is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "layers,successes,shots") {
    throw InputError("layer series CSV header must be 'layers,successes,shots', got '" + line + "'");
  }
  LayerSeries series;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string a, b, c;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') ||
        !std::getline(fields, c)) {
      throw InputError("layer series CSV row " + std::to_string(row) + " needs 3 columns");
    }
    long long layers = 0, successes = 0, shots = 0;
    try {
      std::size_t used = 0;
      layers = std::stoll(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      successes = std::stoll(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
      shots = std::stoll(c, &used);
      if (used != c.size()) throw std::invalid_argument(c);
    } catch (const std::exception&) {
      throw InputError("layer series CSV row " + std::to_string(row) + " is not integral");
    }
    if (shots < 1 || successes < 0 || successes > shots || layers < 1 ||
        layers > std::numeric_limits<int>::max()) {
      throw InputError("layer series CSV row " + std::to_string(row) + " is out of range");
    }
    if (series.shots_per_point != 0 && series.shots_per_point != static_cast<std::uint64_t>(shots)) {
      throw InputError("layer series CSV rows must share one shot count");
    }
    series.shots_per_point = static_cast<std::uint64_t>(shots);
    series.depths.push_back(static_cast<int>(layers));
    series.measured_p.push_back(static_cast<double>(successes) / static_cast<double>(shots));
  }
  series.validate();
  return series;
}

void write_layer_series_csv(std::ostream& out, const LayerSeries& series) {
  out << "layers,successes,shots\n";
  const auto shots = static_cast<double>(series.shots_per_point);
  for (std::size_t i = 0; i < series.depths.size(); ++i) {
    out << series.depths[i] << ',' << std::llround(series.measured_p[i] * shots) << ','
        << series.shots_per_point << '\n';
  }
}

}  // namespace qcoin
