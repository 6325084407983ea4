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

#ifndef QCOIN_CONFIG_HPP
#define QCOIN_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcoin {

enum class ModelKind { kIsing, kQrbm };

std::string_view model_name(ModelKind kind);

/// Experiment parameters shared by every CLI subcommand.
///
/// Config files are flat `key = value` lines; `#` starts a comment and
/// blank lines are ignored. List values (`betas`, `steps`) are comma
/// separated. Unknown keys are errors. Inverse temperatures apply to the
/// rescaled Hamiltonian H / Lambda, whose spectrum lies in [-1, 1].
struct ExperimentConfig {
  ModelKind model = ModelKind::kIsing;
  int n_qubits = 4;    // ising
  int n_visible = 2;   // qrbm
  int n_hidden = 2;    // qrbm
  double transverse_scale = 1.0;  // qrbm
  int instances = 5;
  std::vector<double> betas = {0.2, 1.0, 2.0, 4.0, 10.0};
  std::uint64_t shots = 3000;
  double delta = 0.05;
  double eps_r = 0.2;
  double eps_prime = 0.0;  // 0 = ideal coin
  std::optional<double> xi;  // synthetic noise strength; absent = noiseless
  double mitigation_xi_sigma = 0.0;
  int layers = 12;
  int repetitions = 400;
  std::vector<int> steps = {1, 2, 4, 8};  // fragment
  std::uint64_t seed = 1;
  std::string output_dir = ".";

  int total_qubits() const;

  /// Throws InputError naming the offending field.
  void validate() const;

  /// One `key = value` line per field in a fixed order; stable input for
  /// config_hash().
  std::string canonical() const;
};

/// Sets one field from its textual value. Throws InputError for unknown
/// keys or unparsable values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Applies every `key = value` line of `in` on top of `base`.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});

/// 64-bit FNV-1a of canonical(), used as a provenance tag in outputs.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Hex string of config_hash().
std::string config_hash_hex(const ExperimentConfig& config);

}  // namespace qcoin

#endif  // QCOIN_CONFIG_HPP
