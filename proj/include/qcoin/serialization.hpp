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

#ifndef QCOIN_SERIALIZATION_HPP
#define QCOIN_SERIALIZATION_HPP

#include <json.hpp>

#include "qcoin/estimators.hpp"
#include "qcoin/hamiltonian.hpp"
#include "qcoin/matfunc.hpp"
#include "qcoin/noise.hpp"
#include "qcoin/oracle.hpp"

namespace qcoin {

inline constexpr int kSchemaVersion = 1;

/// {"kind": "ising", "n_qubits", "edges": [[i, j, w], ...], "seed"} or
/// {"kind": "qrbm", "n_qubits", "params": {...}, "seed"}.
nlohmann::json model_to_json(const ModelSpec& spec);
ModelSpec model_from_json(const nlohmann::json& j);

nlohmann::json approximant_to_json(const ChebyshevApproximant& approx);

/// `eps_r` is the requested relative precision.
nlohmann::json estimate_to_json(const Estimate& estimate, double eps_r, double delta);

nlohmann::json oracle_to_json(const OracleReport& report);

nlohmann::json fit_to_json(const NoiseFit& fit);

/// JSON has no NaN or infinity; those become null.
nlohmann::json number_or_null(double x);

}  // namespace qcoin

#endif  // QCOIN_SERIALIZATION_HPP
