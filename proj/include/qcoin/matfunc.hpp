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

#ifndef QCOIN_MATFUNC_HPP
#define QCOIN_MATFUNC_HPP

#include <vector>

#include "qcoin/hamiltonian.hpp"

namespace qcoin {

/// exp(-beta H / 2) together with its sub-normalization alpha = exp(-beta/2).
struct PropagatorExact {
  double beta = 0.0;
  ComplexMatrix matrix;
  double alpha = 1.0;
};

/// V diag(exp(-beta lambda / 2)) V^dagger. Throws InputError for beta < 0.
PropagatorExact exact_propagator(const Hamiltonian& h, double beta);

/// Number of Chebyshev-spaced points x_j = cos(pi j / (N - 1)) on which
/// approximation errors are certified.
inline constexpr int kCertificationGridPoints = 10000;

/// Truncated Jacobi-Anger series of exp(-beta x / 2) on [-1, 1]:
///
///   exp(-beta x / 2) ~ sum_{k=0}^{d} c_k T_k(x),
///   c_0 = I_0(beta/2),  c_k = 2 (-1)^k I_k(beta/2)  (k >= 1).
///
/// `subnormalized_coefficients` are exp(-beta/2) c_k, the series of the
/// block-encoded function alpha f(x); evaluation goes through them so that
/// large beta never overflows. `certified_error` is the grid maximum of
/// |alpha (sum c_k T_k(x) - exp(-beta x / 2))|.
struct ChebyshevApproximant {
  int degree = 0;
  double target_beta = 0.0;
  std::vector<double> coefficients;
  std::vector<double> subnormalized_coefficients;
  double certified_error = 0.0;

  /// sum_k c_k T_k(x) via Clenshaw.
  double evaluate(double x) const;

  /// exp(-beta/2) sum_k c_k T_k(x).
  double evaluate_subnormalized(double x) const;
};

/// Smallest degree whose truncation certifies error <= eps_prime on the grid.
/// Degrees are tried in increasing order. Requires 0 < eps_prime <= 1 and
/// beta >= 0. When eps_prime is below the rounding floor of the grid check
/// (~1e-15), the rigorous tail bound 2 sum_{k>d} |exp(-beta/2) c_k| is
/// accepted as the certificate instead.
int required_degree(double beta, double eps_prime);

ChebyshevApproximant chebyshev_coefficients(double beta, int degree);

/// chebyshev_coefficients(beta, required_degree(beta, eps_prime)).
ChebyshevApproximant certified_approximant(double beta, double eps_prime);

enum class EvaluationPath { kEigen, kClenshaw };

/// f~[H] = sum_k c_k T_k[H]. The eigen path evaluates the polynomial on the
/// cached spectrum; the Clenshaw path runs the matrix three-term recurrence.
/// Throws InputError when the spectrum of H leaves [-1, 1].
ComplexMatrix apply_approximant(const ChebyshevApproximant& approx, const Hamiltonian& h,
                                EvaluationPath path = EvaluationPath::kEigen);

/// Worst-case block-encoding tolerance eps_r / (6 e^beta 2^n) that keeps the
/// estimator bias below eps_r / 2 for any Z.
double eps_prime_for_relative_error(double beta, int n_qubits, double eps_r);

}  // namespace qcoin

#endif  // QCOIN_MATFUNC_HPP
