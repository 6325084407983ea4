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

#ifndef QCOIN_HAMILTONIAN_HPP
#define QCOIN_HAMILTONIAN_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace qcoin {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Dense storage limit. 2^12 = 4096 keeps exact diagonalization desk-scale.
inline constexpr int kMaxQubits = 12;

/// Entrywise tolerance for |H - H^dagger|.
inline constexpr double kHermitianTolerance = 1e-12;

/// Eigenvalues in ascending order and the unitary whose columns are the
/// matching eigenvectors.
struct EigenCache {
  RealVector values;
  ComplexMatrix vectors;
};

/// Diagonalizes a Hermitian matrix. Diagonal input is sorted directly;
/// anything else goes through a self-adjoint solver.
/// Throws InputError if `matrix` is not square or not Hermitian.
EigenCache eigendecompose(const ComplexMatrix& matrix);

/// Immutable dense Hermitian operator on n qubits with a certified upper
/// bound on its spectral norm. Copies share the underlying storage, so
/// values are cheap to pass around and safe to read from many threads.
///
/// Qubit 0 is the most significant bit of the computational-basis index,
/// i.e. operators are laid out as O_0 (x) O_1 (x) ... (x) O_{n-1}.
class Hamiltonian {
 public:
  /// Validates shape and Hermiticity and diagonalizes eagerly.
  /// Throws InputError when `norm_bound` is below the spectral norm.
  Hamiltonian(ComplexMatrix matrix, double norm_bound);

  /// Uses the exact spectral norm as the bound.
  static Hamiltonian from_matrix(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return state_->matrix; }
  int n_qubits() const { return state_->n_qubits; }
  Eigen::Index dimension() const { return state_->matrix.rows(); }
  double norm_bound() const { return state_->norm_bound; }
  const EigenCache& eigen() const { return state_->eigen; }
  const RealVector& eigenvalues() const { return state_->eigen.values; }
  bool is_diagonal() const { return state_->diagonal; }

  /// max |lambda| from the eigenvalue cache.
  double spectral_norm() const;

  /// True when every eigenvalue lies in [-1 - tol, 1 + tol].
  bool has_unit_spectrum(double tol = 1e-12) const;

 private:
  struct State {
    ComplexMatrix matrix;
    int n_qubits = 0;
    double norm_bound = 0.0;
    EigenCache eigen;
    bool diagonal = false;
  };
  std::shared_ptr<const State> state_;
};

struct IsingEdge {
  int i = 0;
  int j = 0;
  double weight = 0.0;
};

/// H = sum_{(i,j)} J_ij Z_i Z_j on a graph where every vertex has degree >= 1.
struct IsingSpec {
  int n_qubits = 0;
  std::vector<IsingEdge> edges;
  std::uint64_t seed = 0;

  /// Throws InputError on self loops, out-of-range vertices, duplicate
  /// undirected edges or isolated vertices.
  void validate() const;
};

/// Quantum restricted Boltzmann machine. Visible units are qubits
/// [0, n_visible), hidden units follow.
///
///   H = -sum_i b_i Z_i - sum_{v,h} w_vh Z_v Z_h - sum_h Gamma_h X_h
struct QrbmSpec {
  int n_visible = 0;
  int n_hidden = 0;
  RealMatrix couplings;       // n_visible x n_hidden
  RealVector biases;          // n_visible + n_hidden
  RealVector transverse_field;  // n_hidden
  std::uint64_t seed = 0;

  int n_qubits() const { return n_visible + n_hidden; }
  void validate() const;
};

using ModelSpec = std::variant<IsingSpec, QrbmSpec>;

/// Random graph: each still-isolated vertex is first joined to a uniformly
/// chosen vertex that is also isolated (any other vertex if none is left),
/// then every remaining pair is added with probability 1/2. Weights are
/// i.i.d. N(0, 1). Deterministic in (n_qubits, seed).
IsingSpec generate_random_ising_graph(int n_qubits, std::uint64_t seed);

/// All couplings, biases and transverse fields i.i.d. N(0, 1); the
/// transverse fields are multiplied by `transverse_scale`.
QrbmSpec generate_random_qrbm(int n_visible, int n_hidden, std::uint64_t seed,
                              double transverse_scale = 1.0);

/// Norm bound: sum of |J_ij|.
Hamiltonian build_ising(const IsingSpec& spec);

/// Norm bound: sum of |b| + |w| + |Gamma|.
Hamiltonian build_qrbm(const QrbmSpec& spec);

Hamiltonian build_model(const ModelSpec& spec);

int model_qubits(const ModelSpec& spec);

struct RescaledHamiltonian {
  Hamiltonian hamiltonian;
  double beta;
};

/// H -> H / Lambda, beta -> Lambda * beta, so that exp(-beta H) is unchanged
/// and the spectrum lies in [-1, 1]. A zero Hamiltonian with Lambda = 0 is
/// returned as is.
RescaledHamiltonian rescale_to_unit_spectrum(const Hamiltonian& h, double beta);

}  // namespace qcoin

#endif  // QCOIN_HAMILTONIAN_HPP
