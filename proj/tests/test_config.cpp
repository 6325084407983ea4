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

#include "qcoin/config.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "qcoin/errors.hpp"

namespace qcoin {
namespace {

TEST(Config, ParsesFlatFileWithComments) {
  std::istringstream in(
      "# sweep settings\n"
      "model = qrbm\n"
      "\n"
      "n_visible = 2   # visible units\n"
      "n_hidden=2\n"
      "betas = 0.02, 0.2,0.5 , 1.0,1.6\n"
      "shots = 3000\n"
      "xi = 0.037\n"
      "layers = 10\n"
      "seed = 18446744073709551615\n");
  const ExperimentConfig c = parse_config(in);
  EXPECT_EQ(c.model, ModelKind::kQrbm);
  EXPECT_EQ(c.total_qubits(), 4);
  EXPECT_EQ(c.betas, (std::vector<double>{0.02, 0.2, 0.5, 1.0, 1.6}));
  EXPECT_EQ(c.shots, 3000u);
  ASSERT_TRUE(c.xi.has_value());
  EXPECT_EQ(*c.xi, 0.037);
  EXPECT_EQ(c.layers, 10);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, OverridesApplyOnTop) {
  std::istringstream in("shots = 100\nxi = 0.05\n");
  ExperimentConfig c = parse_config(in);
  apply_setting(c, "shots", "200");
  apply_setting(c, "xi", "none");
  EXPECT_EQ(c.shots, 200u);
  EXPECT_FALSE(c.xi.has_value());
}

TEST(Config, ErrorsNameTheField) {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_config(in).validate();
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("shots = 0\n").find("shots"), std::string::npos);
  EXPECT_NE(message("instances = 0\n").find("instances"), std::string::npos);
  EXPECT_NE(message("betas = 1, -2\n").find("betas"), std::string::npos);
  EXPECT_NE(message("delta = 1.5\n").find("delta"), std::string::npos);
  EXPECT_NE(message("shots = many\n").find("shots"), std::string::npos);
  EXPECT_NE(message("colour = red\n").find("colour"), std::string::npos);
  EXPECT_NE(message("model = heisenberg\n").find("model"), std::string::npos);
  EXPECT_NE(message("n_qubits = 13\n").find("n_qubits"), std::string::npos);
  EXPECT_NE(message("just words\n").find("line 1"), std::string::npos);
}

TEST(Config, HashTracksContent) {
  ExperimentConfig a;
  ExperimentConfig b;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash_hex(a).size(), 16u);
  b.shots = 3001;
  EXPECT_NE(config_hash(a), config_hash(b));
  // The output directory does not change results, so it is not hashed.
  b = a;
  b.output_dir = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
}

TEST(Config, CanonicalFormParsesBack) {
  ExperimentConfig a;
  a.model = ModelKind::kQrbm;
  a.betas = {0.1, 1.0 / 3.0};
  a.xi = 0.037;
  a.seed = 99;
  std::istringstream in(a.canonical());
  const ExperimentConfig b = parse_config(in);
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(b.betas[1], 1.0 / 3.0);
}

}  // namespace
}  // namespace qcoin
