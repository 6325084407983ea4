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

#include "qcoin/matfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcoin/bessel.hpp"
#include "qcoin/errors.hpp"

namespace qcoin {
namespace {

constexpr int kMaxDegree = 100000;

// Largest beta for which the unscaled coefficients stay finite.
constexpr double kMaxBeta = 1400.0;

std::vector<double> certification_grid() {
  std::vector<double> grid(kCertificationGridPoints);
  for (int j = 0; j < kCertificationGridPoints; ++j) {
    grid[static_cast<std::size_t>(j)] =
        std::cos(std::numbers::pi * j / (kCertificationGridPoints - 1));
  }
  return grid;
}

const std::vector<double>& grid_points() {
  static const std::vector<double> grid = certification_grid();
  return grid;
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = c[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c.empty() ? 0.0 : c[0] + x * b1 - b2;
}

// exp(-beta/2) c_k for k = 0..degree.
std::vector<double> subnormalized_series(double beta, int degree) {
  std::vector<double> s = scaled_bessel_i(beta / 2.0, degree);
  for (std::size_t k = 1; k < s.size(); ++k) {
    s[k] *= (k % 2 == 0) ? 2.0 : -2.0;
  }
  return s;
}

double grid_error(const std::vector<double>& subnormalized, double beta) {
  double worst = 0.0;
  for (double x : grid_points()) {
    const double target = std::exp(-beta * (1.0 + x) / 2.0);
    worst = std::max(worst, std::abs(clenshaw(subnormalized, x) - target));
  }
  return worst;
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InputError("beta must be finite and >= 0");
  }
}

}  // namespace

PropagatorExact exact_propagator(const Hamiltonian& h, double beta) {
  check_beta(beta);
  const EigenCache& eig = h.eigen();
  const RealVector weights = (-0.5 * beta * eig.values.array()).exp().matrix();
  PropagatorExact out;
  out.beta = beta;
  out.alpha = std::exp(-beta / 2.0);
  out.matrix = eig.vectors * weights.cast<std::complex<double>>().asDiagonal() *
               eig.vectors.adjoint();
  return out;
}

double ChebyshevApproximant::evaluate(double x) const { return clenshaw(coefficients, x); }

double ChebyshevApproximant::evaluate_subnormalized(double x) const {
  return clenshaw(subnormalized_coefficients, x);
}

int required_degree(double beta, double eps_prime) {
  check_beta(beta);
  if (!(eps_prime > 0.0) || eps_prime > 1.0) {
    throw InputError("eps_prime must lie in (0, 1], got " + std::to_string(eps_prime));
  }
  const std::vector<double>& grid = grid_points();
  const std::size_t points = grid.size();
  std::vector<double> target(points);
  for (std::size_t j = 0; j < points; ++j) {
    target[j] = std::exp(-beta * (1.0 + grid[j]) / 2.0);
  }

  int capacity = 64;
  std::vector<double> series = subnormalized_series(beta, capacity);
  std::vector<double> tail(series.size() + 1, 0.0);
  auto refresh_tail = [&] {
    tail.assign(series.size() + 1, 0.0);
    for (std::size_t k = series.size(); k-- > 0;) {
      tail[k] = tail[k + 1] + std::abs(series[k]);
    }
  };
  refresh_tail();

  // Partial sums and the T_{k-1}, T_k rows, updated one degree at a time.
  std::vector<double> partial(points, series[0]);
  std::vector<double> t_prev(points, 1.0);
  std::vector<double> t_curr(grid);
  for (int d = 0; d <= kMaxDegree; ++d) {
    if (d > 0) {
      if (d >= capacity) {
        capacity *= 2;
        series = subnormalized_series(beta, capacity);
        refresh_tail();
      }
      const double c = series[static_cast<std::size_t>(d)];
      for (std::size_t j = 0; j < points; ++j) {
        partial[j] += c * t_curr[j];
        const double next = 2.0 * grid[j] * t_curr[j] - t_prev[j];
        t_prev[j] = t_curr[j];
        t_curr[j] = next;
      }
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
      worst = std::max(worst, std::abs(partial[j] - target[j]));
    }
    // tail[d + 1] ignores orders beyond `capacity`, which are < 1e-20 when
    // d + 1 < capacity; compare only in that regime.
    const bool tail_certified = (static_cast<std::size_t>(d) + 1 < series.size()) &&
                                tail[static_cast<std::size_t>(d) + 1] <= eps_prime;
    if (worst <= eps_prime || tail_certified) {
      return d;
    }
  }
  throw RuntimeError("required_degree: no certified degree below " +
                     std::to_string(kMaxDegree));
}

ChebyshevApproximant chebyshev_coefficients(double beta, int degree) {
  check_beta(beta);
  if (degree < 0) {
    throw InputError("Chebyshev degree must be >= 0");
  }
  if (beta > kMaxBeta) {
    throw InputError("beta " + std::to_string(beta) +
                     " overflows the unscaled Chebyshev coefficients");
  }
  ChebyshevApproximant approx;
  approx.degree = degree;
  approx.target_beta = beta;
  approx.subnormalized_coefficients = subnormalized_series(beta, degree);
  const double inverse_alpha = std::exp(beta / 2.0);
  approx.coefficients.reserve(approx.subnormalized_coefficients.size());
  for (double s : approx.subnormalized_coefficients) {
    approx.coefficients.push_back(s * inverse_alpha);
  }
  approx.certified_error = grid_error(approx.subnormalized_coefficients, beta);
  return approx;
}

ChebyshevApproximant certified_approximant(double beta, double eps_prime) {
  return chebyshev_coefficients(beta, required_degree(beta, eps_prime));
}

ComplexMatrix apply_approximant(const ChebyshevApproximant& approx, const Hamiltonian& h,
                                EvaluationPath path) {
  if (!h.has_unit_spectrum()) {
    throw InputError("apply_approximant: Hamiltonian spectrum leaves [-1, 1]");
  }
  if (path == EvaluationPath::kEigen) {
    const EigenCache& eig = h.eigen();
    RealVector values(eig.values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      values(k) = approx.evaluate(eig.values(k));
    }
    return eig.vectors * values.cast<std::complex<double>>().asDiagonal() *
           eig.vectors.adjoint();
  }
  const Eigen::Index dim = h.dimension();
  const ComplexMatrix& m = h.matrix();
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  const auto& c = approx.subnormalized_coefficients;
  ComplexMatrix b1 = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix b2 = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = c.size(); k-- > 1;) {
    ComplexMatrix b0 = c[k] * identity + 2.0 * (m * b1) - b2;
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  const ComplexMatrix scaled = c[0] * identity + m * b1 - b2;
  return scaled * std::exp(approx.target_beta / 2.0);
}

double eps_prime_for_relative_error(double beta, int n_qubits, double eps_r) {
  check_beta(beta);
  if (!(eps_r > 0.0)) {
    throw InputError("eps_r must be > 0");
  }
  return eps_r / (6.0 * std::exp(beta) * std::ldexp(1.0, n_qubits));
}

}  // namespace qcoin
