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

#include <gtest/gtest.h>

#include <cmath>

#include "qcoin/errors.hpp"

namespace qcoin {
namespace {

TEST(Serialization, IsingRoundTrip) {
  const IsingSpec spec = generate_random_ising_graph(5, 3);
  const nlohmann::json j = model_to_json(spec);
  EXPECT_EQ(j.at("kind"), "ising");
  EXPECT_EQ(j.at("n_qubits"), 5);
  EXPECT_EQ(j.at("seed"), 3u);
  const ModelSpec back = model_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ((build_model(back).matrix() - build_ising(spec).matrix()).norm(), 0.0);
}

TEST(Serialization, QrbmRoundTrip) {
  const QrbmSpec spec = generate_random_qrbm(2, 3, 11);
  const nlohmann::json j = model_to_json(spec);
  EXPECT_EQ(j.at("kind"), "qrbm");
  EXPECT_EQ(j.at("n_qubits"), 5);
  EXPECT_TRUE(j.contains("params"));
  const ModelSpec back = model_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ((build_model(back).matrix() - build_qrbm(spec).matrix()).norm(), 0.0);
}

TEST(Serialization, MalformedModelIsInputError) {
  EXPECT_THROW(model_from_json(nlohmann::json{{"kind", "potts"}}), InputError);
  EXPECT_THROW(model_from_json(nlohmann::json{{"kind", "ising"}}), InputError);
  nlohmann::json j = model_to_json(generate_random_qrbm(2, 2, 1));
  j["params"]["biases"] = {1.0};
  EXPECT_THROW(model_from_json(j), InputError);
}

TEST(Serialization, ApproximantEstimateOracleFit) {
  const ChebyshevApproximant a = certified_approximant(2.0, 1e-6);
  const nlohmann::json ja = approximant_to_json(a);
  EXPECT_EQ(ja.at("degree"), a.degree);
  EXPECT_EQ(ja.at("coefficients").size(), static_cast<std::size_t>(a.degree) + 1);
  EXPECT_EQ(ja.at("beta"), 2.0);
  EXPECT_EQ(ja.at("certified_error"), a.certified_error);

  Estimate e;
  e.value = 3.0;
  e.half_width = 0.2;
  e.samples_used = 10;
  e.queries_used = 50;
  e.algorithm = Algorithm::kIterative;
  const nlohmann::json je = estimate_to_json(e, 0.1, 0.05);
  EXPECT_EQ(je.at("algorithm"), "iterative");
  EXPECT_EQ(je.at("eps_r"), 0.1);
  EXPECT_EQ(je.at("delta"), 0.05);
  EXPECT_EQ(je.at("queries_used"), 50u);

  OracleReport r;
  r.free_energy = std::nan("");
  EXPECT_TRUE(oracle_to_json(r).at("free_energy").is_null());

  NoiseFit f;
  f.model = {0.04, 0.01};
  f.p_hat = 0.38;
  f.p_sigma = 0.05;
  f.residual_norm = 1e-3;
  const nlohmann::json jf = fit_to_json(f);
  EXPECT_EQ(jf.at("xi"), 0.04);
  EXPECT_EQ(jf.at("residual"), 1e-3);
}

}  // namespace
}  // namespace qcoin
