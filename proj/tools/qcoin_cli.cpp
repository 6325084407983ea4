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

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "qcoin/config.hpp"
#include "qcoin/errors.hpp"
#include "qcoin/experiment.hpp"
#include "qcoin/oracle.hpp"
#include "qcoin/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

// Registers a flag whose value is forwarded to apply_setting under `key`.
void add_override(CLI::App* app, CommonFlags& flags, const std::string& name,
                  const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      name, [&flags, key](const std::string& v) { flags.overrides.emplace_back(key, v); }, help);
}

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--config", flags.config_path, "flat key = value config file");
  add_override(app, flags, "--seed", "seed", "64-bit master seed");
  add_override(app, flags, "--out", "output_dir", "output directory");
  add_override(app, flags, "--shots", "shots", "coin tosses per point");
  add_override(app, flags, "--beta", "betas", "inverse temperature(s), comma separated");
  add_override(app, flags, "--eps-r", "eps_r", "relative precision");
  add_override(app, flags, "--delta", "delta", "failure probability");
  add_override(app, flags, "--xi", "xi", "synthetic depolarizing strength per layer");
  add_override(app, flags, "--layers", "layers", "circuit layers for the noise model");
  add_override(app, flags, "--model", "model", "ising or qrbm");
  add_override(app, flags, "--instances", "instances", "random instances");
  add_override(app, flags, "--n-qubits", "n_qubits", "ising qubits");
  add_override(app, flags, "--eps-prime", "eps_prime", "approximation error (0 = ideal coin)");
}

qcoin::ExperimentConfig load_config(const CommonFlags& flags) {
  qcoin::ExperimentConfig config;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw qcoin::InputError("cannot open config file '" + flags.config_path + "'");
    config = qcoin::parse_config(in, config);
  }
  for (const auto& [key, value] : flags.overrides) qcoin::apply_setting(config, key, value);
  config.validate();
  return config;
}

fs::path prepare_out(const qcoin::ExperimentConfig& config) {
  fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw qcoin::InputError("cannot create output_dir '" + dir.string() + "'");
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw qcoin::RuntimeError("cannot write '" + path.string() + "'");
  return out;
}

void write_json(const fs::path& path, const json& j) {
  open_out(path) << j.dump(2) << '\n';
}

int cmd_generate(const qcoin::ExperimentConfig& config) {
  const fs::path dir = prepare_out(config);
  json list = json::array();
  for (const qcoin::ModelSpec& spec : qcoin::generate_instances(config)) {
    const qcoin::Instance inst = qcoin::prepare_instance(spec);
    json j = qcoin::model_to_json(spec);
    j["lambda"] = inst.lambda;
    list.push_back(j);
  }
  const json doc = {{"schema_version", qcoin::kSchemaVersion},
                    {"kind", "instances"},
                    {"seed", config.seed},
                    {"config_hash", qcoin::config_hash_hex(config)},
                    {"instances", list}};
  write_json(dir / "instances.json", doc);
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_oracle(const qcoin::ExperimentConfig& config, const std::string& input) {
  const fs::path dir = prepare_out(config);
  std::vector<qcoin::ModelSpec> specs;
  if (input.empty()) {
    specs = qcoin::generate_instances(config);
  } else {
    std::ifstream in(input);
    if (!in) throw qcoin::InputError("cannot open instances file '" + input + "'");
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw qcoin::InputError(std::string("malformed instances JSON: ") + e.what());
    }
    const json& list = doc.contains("instances") ? doc.at("instances") : doc;
    if (list.is_array()) {
      for (const json& j : list) specs.push_back(qcoin::model_from_json(j));
    } else {
      specs.push_back(qcoin::model_from_json(list));
    }
  }
  json out = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const qcoin::Instance inst = qcoin::prepare_instance(specs[i]);
    json reports = json::array();
    for (double beta : config.betas) {
      reports.push_back(qcoin::oracle_to_json(qcoin::oracle_report(inst.unit, beta)));
    }
    out.push_back({{"instance", i}, {"lambda", inst.lambda}, {"reports", reports}});
  }
  const json doc = {{"schema_version", qcoin::kSchemaVersion},
                    {"kind", "oracle"},
                    {"seed", config.seed},
                    {"config_hash", qcoin::config_hash_hex(config)},
                    {"instances", out}};
  write_json(dir / "oracle.json", doc);
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const qcoin::ExperimentConfig& config) {
  const fs::path dir = prepare_out(config);
  const qcoin::SweepResult result = qcoin::run_sweep(config);
  {
    std::ofstream csv = open_out(dir / "sweep.csv");
    qcoin::write_sweep_csv(csv, result);
  }
  const json summary = qcoin::sweep_summary(result, config);
  write_json(dir / "sweep.json", summary);
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int cmd_coverage(const qcoin::ExperimentConfig& config, const std::string& algorithm) {
  const fs::path dir = prepare_out(config);
  const qcoin::Algorithm alg = qcoin::parse_algorithm(algorithm);
  const qcoin::CoverageReport report = qcoin::run_coverage(config, alg);
  const json doc = qcoin::coverage_to_json(report, config);
  write_json(dir / ("coverage_" + std::string(qcoin::algorithm_name(alg)) + ".json"), doc);
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_noise_fit(const qcoin::ExperimentConfig& config, const std::string& input,
                  double p_ideal, int insertions, bool unweighted) {
  const fs::path dir = prepare_out(config);
  qcoin::LayerSeries series;
  if (input.empty()) {
    const double xi = config.xi.value_or(0.037);
    series = qcoin::simulate_layer_series(
        p_ideal, xi, qcoin::identity_insertion_depths(config.layers, insertions), config.shots,
        config.seed);
    std::ofstream csv = open_out(dir / "layer_series.csv");
    qcoin::write_layer_series_csv(csv, series);
  } else {
    std::ifstream in(input);
    if (!in) throw qcoin::InputError("cannot open layer series '" + input + "'");
    series = qcoin::read_layer_series_csv(in);
  }
  qcoin::FitOptions options;
  if (unweighted) options.weighting = qcoin::FitWeighting::kUnweighted;
  const qcoin::NoiseFitReport report = qcoin::run_noise_fit(series, options);
  {
    std::ofstream csv = open_out(dir / "fit_curve.csv");
    qcoin::write_fit_curve_csv(csv, report);
  }
  json doc = qcoin::noise_fit_to_json(report);
  doc["seed"] = config.seed;
  doc["config_hash"] = qcoin::config_hash_hex(config);
  write_json(dir / "noise_fit.json", doc);
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_fragment(const qcoin::ExperimentConfig& config) {
  const fs::path dir = prepare_out(config);
  const std::vector<qcoin::FragmentRow> rows = qcoin::run_fragment(config);
  {
    std::ofstream csv = open_out(dir / "fragment.csv");
    qcoin::write_fragment_csv(csv, rows, qcoin::config_hash(config));
  }
  json best = json::array();
  for (const qcoin::FragmentRow& r : rows) {
    best.push_back({{"instance", r.instance},
                    {"beta", r.beta},
                    {"steps", r.steps},
                    {"schedule", r.schedule},
                    {"expected_queries", r.expected_queries},
                    {"unfragmented_queries", r.unfragmented_queries}});
  }
  const json doc = {{"schema_version", qcoin::kSchemaVersion},
                    {"kind", "fragment"},
                    {"seed", config.seed},
                    {"config_hash", qcoin::config_hash_hex(config)},
                    {"rows", best}};
  write_json(dir / "fragment.json", doc);
  std::cout << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition-function estimation with simulated quantum coins"};
  app.require_subcommand(1);

  CommonFlags generate_flags, oracle_flags, sweep_flags, coverage_flags, fit_flags,
      fragment_flags;
  auto* generate = app.add_subcommand("generate", "write random Hamiltonian instances");
  add_common(generate, generate_flags);

  auto* oracle = app.add_subcommand("oracle", "exact Z, free energy and p_suc per beta");
  add_common(oracle, oracle_flags);
  std::string oracle_input;
  oracle->add_option("--input", oracle_input, "instances JSON (default: generate)");

  auto* sweep = app.add_subcommand("sweep", "beta sweep: exact, sampled, noisy, mitigated");
  add_common(sweep, sweep_flags);

  auto* coverage = app.add_subcommand("coverage", "estimator coverage over repetitions");
  add_common(coverage, coverage_flags);
  std::string algorithm = "alg1";
  coverage->add_option("--algorithm", algorithm, "alg1, alg2 or iterative");
  add_override(coverage, coverage_flags, "--reps", "repetitions", "repetitions per cell");

  auto* fit = app.add_subcommand("noise-fit", "fit (xi, p) from an identity-insertion series");
  add_common(fit, fit_flags);
  std::string fit_input;
  double p_ideal = 0.38;
  int insertions = 5;
  bool unweighted = false;
  fit->add_option("--input", fit_input, "layer series CSV (default: synthetic)");
  fit->add_option("--p-ideal", p_ideal, "ideal p for the synthetic series");
  fit->add_option("--insertions", insertions, "identity insertions for the synthetic series");
  fit->add_flag("--unweighted", unweighted, "unweighted least squares");

  auto* fragment = app.add_subcommand("fragment", "fragmented-coin cost study");
  add_common(fragment, fragment_flags);
  add_override(fragment, fragment_flags, "--steps", "steps", "schedule sizes, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*generate) return cmd_generate(load_config(generate_flags));
    if (*oracle) return cmd_oracle(load_config(oracle_flags), oracle_input);
    if (*sweep) return cmd_sweep(load_config(sweep_flags));
    if (*coverage) return cmd_coverage(load_config(coverage_flags), algorithm);
    if (*fit) return cmd_noise_fit(load_config(fit_flags), fit_input, p_ideal, insertions, unweighted);
    if (*fragment) return cmd_fragment(load_config(fragment_flags));
  } catch (const qcoin::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qcoin::RuntimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
