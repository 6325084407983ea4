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

#include "qcoin/serialization.hpp"

#include <cmath>
#include <string>

#include "qcoin/errors.hpp"

namespace qcoin {

using nlohmann::json;

json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

namespace {

json vector_to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RealVector vector_from_json(const json& j, Eigen::Index expected, const char* field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != expected) {
    throw InputError(std::string("qrbm params: '") + field + "' has the wrong length");
  }
  RealVector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v(i) = j.at(i).get<double>();
  return v;
}

}  // namespace

json model_to_json(const ModelSpec& spec) {
  if (const auto* ising = std::get_if<IsingSpec>(&spec)) {
    json edges = json::array();
    for (const IsingEdge& e : ising->edges) edges.push_back({e.i, e.j, e.weight});
    return {{"kind", "ising"},
            {"n_qubits", ising->n_qubits},
            {"edges", edges},
            {"seed", ising->seed}};
  }
  const auto& qrbm = std::get<QrbmSpec>(spec);
  json couplings = json::array();
  for (Eigen::Index v = 0; v < qrbm.couplings.rows(); ++v) {
    json row = json::array();
    for (Eigen::Index h = 0; h < qrbm.couplings.cols(); ++h) row.push_back(qrbm.couplings(v, h));
    couplings.push_back(row);
  }
  return {{"kind", "qrbm"},
          {"n_qubits", qrbm.n_qubits()},
          {"params",
           {{"n_visible", qrbm.n_visible},
            {"n_hidden", qrbm.n_hidden},
            {"couplings", couplings},
            {"biases", vector_to_json(qrbm.biases)},
            {"transverse_field", vector_to_json(qrbm.transverse_field)}}},
          {"seed", qrbm.seed}};
}

ModelSpec model_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ising") {
      IsingSpec spec;
      spec.n_qubits = j.at("n_qubits").get<int>();
      spec.seed = j.value("seed", std::uint64_t{0});
      for (const json& e : j.at("edges")) {
        spec.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
      }
      spec.validate();
      return spec;
    }
    if (kind == "qrbm") {
      const json& p = j.at("params");
      QrbmSpec spec;
      spec.n_visible = p.at("n_visible").get<int>();
      spec.n_hidden = p.at("n_hidden").get<int>();
      spec.seed = j.value("seed", std::uint64_t{0});
      const json& couplings = p.at("couplings");
      if (!couplings.is_array() || static_cast<int>(couplings.size()) != spec.n_visible) {
        throw InputError("qrbm params: 'couplings' has the wrong shape");
      }
      spec.couplings.resize(spec.n_visible, spec.n_hidden);
      for (int v = 0; v < spec.n_visible; ++v) {
        spec.couplings.row(v) =
            vector_from_json(couplings.at(v), spec.n_hidden, "couplings").transpose();
      }
      spec.biases = vector_from_json(p.at("biases"), spec.n_qubits(), "biases");
      spec.transverse_field =
          vector_from_json(p.at("transverse_field"), spec.n_hidden, "transverse_field");
      spec.validate();
      return spec;
    }
    throw InputError("model kind must be 'ising' or 'qrbm', got '" + kind + "'");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model JSON: ") + e.what());
  }
}

json approximant_to_json(const ChebyshevApproximant& approx) {
  json coefficients = json::array();
  for (double c : approx.coefficients) coefficients.push_back(c);
  return {{"beta", approx.target_beta},
          {"degree", approx.degree},
          {"coefficients", coefficients},
          {"certified_error", approx.certified_error}};
}

json estimate_to_json(const Estimate& estimate, double eps_r, double delta) {
  return {{"value", number_or_null(estimate.value)},
          {"half_width", number_or_null(estimate.half_width)},
          {"eps_r", eps_r},
          {"delta", delta},
          {"samples_used", estimate.samples_used},
          {"queries_used", estimate.queries_used},
          {"algorithm", std::string(algorithm_name(estimate.algorithm))}};
}

json oracle_to_json(const OracleReport& report) {
  return {{"beta", report.beta},
          {"z_beta", number_or_null(report.z_beta)},
          {"free_energy", number_or_null(report.free_energy)},
          {"p_suc_ideal", number_or_null(report.p_suc_ideal)},
          {"mean_trials", number_or_null(report.mean_trials)}};
}

json fit_to_json(const NoiseFit& fit) {
  return {{"xi", fit.model.xi},
          {"xi_sigma", number_or_null(fit.model.xi_sigma)},
          {"p_hat", fit.p_hat},
          {"p_sigma", number_or_null(fit.p_sigma)},
          {"residual", fit.residual_norm}};
}

}  // namespace qcoin
