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

#include "qcoin/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "qcoin/errors.hpp"
#include "qcoin/rng.hpp"

namespace qcoin {
namespace {

int qubits_for_dimension(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw InputError("Hamiltonian dimension " + std::to_string(dim) +
                     " is not a power of two >= 2");
  }
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  if (n > kMaxQubits) {
    throw InputError("Hamiltonian on " + std::to_string(n) +
                     " qubits exceeds the dense limit of " +
                     std::to_string(kMaxQubits));
  }
  return n;
}

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw InputError("qubit count " + std::to_string(n) + " outside [1, " +
                     std::to_string(kMaxQubits) + "]");
  }
}

bool is_diagonal_matrix(const ComplexMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != c && m(r, c) != std::complex<double>(0.0, 0.0)) {
        return false;
      }
    }
  }
  return true;
}

// Eigenvalue of Z_q on basis state `index`, with qubit 0 the most
// significant bit.
double z_sign(std::uint64_t index, int qubit, int n_qubits) {
  return ((index >> (n_qubits - 1 - qubit)) & 1U) ? -1.0 : 1.0;
}

}  // namespace

EigenCache eigendecompose(const ComplexMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw InputError("eigendecompose: matrix is not square");
  }
  const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw InputError("eigendecompose: matrix is not Hermitian (max |H - H^+| = " +
                     std::to_string(asym) + ")");
  }
  const Eigen::Index dim = matrix.rows();
  EigenCache cache;
  if (is_diagonal_matrix(matrix)) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return matrix(a, a).real() < matrix(b, b).real();
    });
    cache.values.resize(dim);
    cache.vectors = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Eigen::Index src = order[static_cast<std::size_t>(k)];
      cache.values(k) = matrix(src, src).real();
      cache.vectors(src, k) = 1.0;
    }
    return cache;
  }
  const ComplexMatrix symmetric = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw RuntimeError("eigendecompose: self-adjoint solver did not converge");
  }
  cache.values = solver.eigenvalues();
  cache.vectors = solver.eigenvectors();
  return cache;
}

Hamiltonian::Hamiltonian(ComplexMatrix matrix, double norm_bound) {
  if (matrix.rows() != matrix.cols()) {
    throw InputError("Hamiltonian matrix is not square");
  }
  if (!(norm_bound >= 0.0) || !std::isfinite(norm_bound)) {
    throw InputError("Hamiltonian norm bound must be finite and >= 0");
  }
  auto state = std::make_shared<State>();
  state->n_qubits = qubits_for_dimension(matrix.rows());
  state->eigen = eigendecompose(matrix);
  state->diagonal = is_diagonal_matrix(matrix);
  state->matrix = std::move(matrix);
  state->norm_bound = norm_bound;
  const auto& values = state->eigen.values;
  const double norm = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  if (norm > norm_bound * (1.0 + 1e-12) + 1e-12) {
    throw InputError("Hamiltonian norm bound " + std::to_string(norm_bound) +
                     " is below the spectral norm " + std::to_string(norm));
  }
  state_ = std::move(state);
}

Hamiltonian Hamiltonian::from_matrix(ComplexMatrix matrix) {
  const EigenCache cache = eigendecompose(matrix);
  const double norm = std::max(std::abs(cache.values(0)),
                               std::abs(cache.values(cache.values.size() - 1)));
  return Hamiltonian(std::move(matrix), norm);
}

double Hamiltonian::spectral_norm() const {
  const auto& values = eigenvalues();
  return std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
}

bool Hamiltonian::has_unit_spectrum(double tol) const {
  const auto& values = eigenvalues();
  return values(0) >= -1.0 - tol && values(values.size() - 1) <= 1.0 + tol;
}

void IsingSpec::validate() const {
  check_qubit_count(n_qubits);
  std::set<std::pair<int, int>> seen;
  std::vector<int> degree(static_cast<std::size_t>(n_qubits), 0);
  for (const IsingEdge& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n_qubits || e.j >= n_qubits) {
      throw InputError("Ising edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                       ") has a vertex outside [0, " + std::to_string(n_qubits) + ")");
    }
    if (e.i == e.j) {
      throw InputError("Ising edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                       ") is a self loop");
    }
    if (!std::isfinite(e.weight)) {
      throw InputError("Ising edge weight is not finite");
    }
    if (!seen.emplace(std::min(e.i, e.j), std::max(e.i, e.j)).second) {
      throw InputError("duplicate Ising edge (" + std::to_string(e.i) + ", " +
                       std::to_string(e.j) + ")");
    }
    ++degree[static_cast<std::size_t>(e.i)];
    ++degree[static_cast<std::size_t>(e.j)];
  }
  for (int v = 0; v < n_qubits; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 0) {
      throw InputError("Ising vertex " + std::to_string(v) + " has no edges");
    }
  }
}

void QrbmSpec::validate() const {
  if (n_visible < 1 || n_hidden < 1) {
    throw InputError("QRBM needs at least one visible and one hidden unit");
  }
  check_qubit_count(n_qubits());
  if (couplings.rows() != n_visible || couplings.cols() != n_hidden) {
    throw InputError("QRBM couplings must be n_visible x n_hidden");
  }
  if (biases.size() != n_qubits()) {
    throw InputError("QRBM biases must have n_visible + n_hidden entries");
  }
  if (transverse_field.size() != n_hidden) {
    throw InputError("QRBM transverse field must have n_hidden entries");
  }
  if (!couplings.allFinite() || !biases.allFinite() || !transverse_field.allFinite()) {
    throw InputError("QRBM parameters must be finite");
  }
}

IsingSpec generate_random_ising_graph(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 2) {
    throw InputError("random Ising graph needs n_qubits >= 2");
  }
  check_qubit_count(n_qubits);
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(n_qubits);
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  std::vector<int> degree(n, 0);
  auto connect = [&](std::size_t a, std::size_t b) {
    adjacent[a][b] = adjacent[b][a] = true;
    ++degree[a];
    ++degree[b];
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] > 0) {
      continue;
    }
    std::vector<std::size_t> candidates;
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v && degree[u] == 0) {
        candidates.push_back(u);
      }
    }
    if (candidates.empty()) {
      for (std::size_t u = 0; u < n; ++u) {
        if (u != v) {
          candidates.push_back(u);
        }
      }
    }
    const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(candidates.size()));
    connect(v, candidates[std::min(pick, candidates.size() - 1)]);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!adjacent[a][b] && rng.bernoulli(0.5)) {
        connect(a, b);
      }
    }
  }
  IsingSpec spec;
  spec.n_qubits = n_qubits;
  spec.seed = seed;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (adjacent[a][b]) {
        spec.edges.push_back({static_cast<int>(a), static_cast<int>(b), rng.normal()});
      }
    }
  }
  return spec;
}

QrbmSpec generate_random_qrbm(int n_visible, int n_hidden, std::uint64_t seed,
                              double transverse_scale) {
  QrbmSpec spec;
  spec.n_visible = n_visible;
  spec.n_hidden = n_hidden;
  spec.seed = seed;
  if (n_visible < 1 || n_hidden < 1) {
    throw InputError("QRBM needs at least one visible and one hidden unit");
  }
  check_qubit_count(n_visible + n_hidden);
  Rng rng(seed);
  spec.couplings.resize(n_visible, n_hidden);
  for (int v = 0; v < n_visible; ++v) {
    for (int h = 0; h < n_hidden; ++h) {
      spec.couplings(v, h) = rng.normal();
    }
  }
  spec.biases.resize(n_visible + n_hidden);
  for (int i = 0; i < n_visible + n_hidden; ++i) {
    spec.biases(i) = rng.normal();
  }
  spec.transverse_field.resize(n_hidden);
  for (int h = 0; h < n_hidden; ++h) {
    spec.transverse_field(h) = transverse_scale * rng.normal();
  }
  return spec;
}

Hamiltonian build_ising(const IsingSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  const std::uint64_t dim = std::uint64_t{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  double bound = 0.0;
  for (const IsingEdge& e : spec.edges) {
    bound += std::abs(e.weight);
  }
  for (std::uint64_t s = 0; s < dim; ++s) {
    double energy = 0.0;
    for (const IsingEdge& e : spec.edges) {
      energy += e.weight * z_sign(s, e.i, n) * z_sign(s, e.j, n);
    }
    m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = energy;
  }
  return Hamiltonian(std::move(m), bound);
}

Hamiltonian build_qrbm(const QrbmSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits();
  const std::uint64_t dim = std::uint64_t{1} << n;
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  const double bound = spec.biases.cwiseAbs().sum() + spec.couplings.cwiseAbs().sum() +
                       spec.transverse_field.cwiseAbs().sum();
  for (std::uint64_t s = 0; s < dim; ++s) {
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
      energy -= spec.biases(i) * z_sign(s, i, n);
    }
    for (int v = 0; v < spec.n_visible; ++v) {
      for (int h = 0; h < spec.n_hidden; ++h) {
        energy -= spec.couplings(v, h) * z_sign(s, v, n) * z_sign(s, spec.n_visible + h, n);
      }
    }
    const auto row = static_cast<Eigen::Index>(s);
    m(row, row) += energy;
    for (int h = 0; h < spec.n_hidden; ++h) {
      const int qubit = spec.n_visible + h;
      const std::uint64_t flipped = s ^ (std::uint64_t{1} << (n - 1 - qubit));
      m(static_cast<Eigen::Index>(flipped), row) -= spec.transverse_field(h);
    }
  }
  return Hamiltonian(std::move(m), bound);
}

Hamiltonian build_model(const ModelSpec& spec) {
  return std::visit(
      [](const auto& s) -> Hamiltonian {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, IsingSpec>) {
          return build_ising(s);
        } else {
          return build_qrbm(s);
        }
      },
      spec);
}

int model_qubits(const ModelSpec& spec) {
  if (const auto* ising = std::get_if<IsingSpec>(&spec)) {
    return ising->n_qubits;
  }
  return std::get<QrbmSpec>(spec).n_qubits();
}

RescaledHamiltonian rescale_to_unit_spectrum(const Hamiltonian& h, double beta) {
  const double bound = h.norm_bound();
  if (bound == 0.0) {
    if (h.spectral_norm() != 0.0) {
      throw InputError("rescale_to_unit_spectrum: zero norm bound on a nonzero Hamiltonian");
    }
    return {h, beta};
  }
  return {Hamiltonian(h.matrix() / bound, 1.0), bound * beta};
}

}  // namespace qcoin
