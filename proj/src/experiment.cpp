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

#include "qcoin/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "qcoin/coin.hpp"
#include "qcoin/errors.hpp"
#include "qcoin/oracle.hpp"
#include "qcoin/rng.hpp"
#include "qcoin/serialization.hpp"

namespace qcoin {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_number(double x) {
  if (!std::isfinite(x)) return "";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string hex64(std::uint64_t x) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(x));
  return buffer;
}

CoinSpec make_coin(const Hamiltonian& unit, double beta, double eps_prime) {
  return eps_prime > 0.0 ? CoinSpec::approximate(unit, beta, eps_prime)
                         : CoinSpec::ideal(unit, beta);
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t task_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

std::vector<ModelSpec> generate_instances(const ExperimentConfig& config) {
  config.validate();
  std::vector<ModelSpec> specs;
  for (int i = 0; i < config.instances; ++i) {
    const std::uint64_t seed = task_seed(config.seed, 0, static_cast<std::uint64_t>(i));
    if (config.model == ModelKind::kIsing) {
      specs.emplace_back(generate_random_ising_graph(config.n_qubits, seed));
    } else {
      specs.emplace_back(generate_random_qrbm(config.n_visible, config.n_hidden, seed,
                                              config.transverse_scale));
    }
  }
  return specs;
}

Instance prepare_instance(const ModelSpec& spec) {
  Hamiltonian raw = build_model(spec);
  RescaledHamiltonian rescaled = rescale_to_unit_spectrum(raw, 1.0);
  return Instance{spec, raw, rescaled.hamiltonian, rescaled.beta};
}

std::vector<Instance> build_instances(const ExperimentConfig& config) {
  std::vector<Instance> out;
  for (const ModelSpec& spec : generate_instances(config)) out.push_back(prepare_instance(spec));
  return out;
}

// ---------------------------------------------------------------- sweep

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  const std::vector<Instance> instances = build_instances(config);
  const std::size_t n_beta = config.betas.size();
  const std::size_t n_inst = instances.size();

  SweepResult result;
  result.noisy = config.xi.has_value();
  result.config_hash = config_hash(config);
  result.rows.resize(n_inst * n_beta);

  parallel_for(n_inst * n_beta, [&](std::size_t task) {
    const std::size_t i = task / n_beta;
    const std::size_t b = task % n_beta;
    const Instance& inst = instances[i];
    const double beta = config.betas[b];
    const CoinSpec coin = make_coin(inst.unit, beta, config.eps_prime);

    SweepRow row;
    row.instance = static_cast<int>(i);
    row.beta = beta;
    row.lambda = inst.lambda;
    row.z_exact = exact_partition_function(inst.unit, beta);
    row.p_exact = ideal_success_probability(inst.unit, beta);
    row.shots = config.shots;
    row.seed = task_seed(config.seed, 1 + i, b);

    row.heads = count_heads(coin, config.shots, derive_seed(row.seed, 0));
    const AcResult ac = ac_estimate(row.heads, row.shots, config.delta);
    row.p_hat = ac.p_hat;
    row.p_hat_sigma = ac.eps_p / z_quantile(config.delta);

    if (config.xi) {
      const double xi = *config.xi;
      const NoiseModel model{xi, config.mitigation_xi_sigma};
      row.layers = config.layers;
      row.p_noisy_exact = noisy_success_probability(success_probability(coin), xi, config.layers);
      row.noisy_heads = simulate_noisy_tosses(success_probability(coin), xi, config.layers,
                                              config.shots, derive_seed(row.seed, 1));
      const AcResult noisy = ac_estimate(row.noisy_heads, row.shots, config.delta);
      row.p_noisy_hat = noisy.p_hat;
      row.p_noisy_sigma = noisy.eps_p / z_quantile(config.delta);
      const Mitigated m = mitigate(row.p_noisy_hat, model, config.layers);
      row.p_mitigated = m.value;
      row.clamped = m.clamped;
      row.mitigated_sigma =
          propagate_uncertainty(row.p_noisy_hat, row.p_noisy_sigma, model, config.layers);
    } else {
      row.p_noisy_exact = row.p_noisy_hat = row.p_noisy_sigma = kNaN;
      row.p_mitigated = row.mitigated_sigma = kNaN;
    }
    result.rows[task] = row;
  });

  const double m = static_cast<double>(n_inst);
  for (std::size_t b = 0; b < n_beta; ++b) {
    SweepRow avg;
    avg.instance = -1;
    avg.beta = config.betas[b];
    avg.lambda = kNaN;
    avg.shots = config.shots;
    avg.layers = result.noisy ? config.layers : 0;
    avg.seed = config.seed;
    double var_hat = 0.0;
    double var_noisy = 0.0;
    double var_mit = 0.0;
    for (std::size_t i = 0; i < n_inst; ++i) {
      const SweepRow& r = result.rows[i * n_beta + b];
      avg.z_exact += r.z_exact / m;
      avg.p_exact += r.p_exact / m;
      avg.heads += r.heads;
      avg.p_hat += r.p_hat / m;
      var_hat += r.p_hat_sigma * r.p_hat_sigma;
      avg.p_noisy_exact += r.p_noisy_exact / m;
      avg.noisy_heads += r.noisy_heads;
      avg.p_noisy_hat += r.p_noisy_hat / m;
      var_noisy += r.p_noisy_sigma * r.p_noisy_sigma;
      avg.p_mitigated += r.p_mitigated / m;
      var_mit += r.mitigated_sigma * r.mitigated_sigma;
      avg.clamped = avg.clamped || r.clamped;
    }
    avg.p_hat_sigma = std::sqrt(var_hat) / m;
    avg.p_noisy_sigma = std::sqrt(var_noisy) / m;
    avg.mitigated_sigma = std::sqrt(var_mit) / m;
    result.rows.push_back(avg);
  }
  return result;
}

double mitigated_agreement(const SweepResult& result, bool averaged_rows, double k) {
  int total = 0;
  int within = 0;
  for (const SweepRow& r : result.rows) {
    if ((r.instance < 0) != averaged_rows) continue;
    ++total;
    if (std::abs(r.p_mitigated - r.p_exact) <= k * r.mitigated_sigma) ++within;
  }
  return total ? static_cast<double>(within) / total : kNaN;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "# qcoin sweep csv v" << kSweepCsvVersion << '\n';
  out << "instance,beta,lambda,z_exact,p_exact,shots,heads,p_hat,p_hat_sigma,layers,"
         "p_noisy_exact,noisy_heads,p_noisy_hat,p_noisy_sigma,p_mitigated,mitigated_sigma,"
         "clamped,seed,config_hash\n";
  const std::string hash = hex64(result.config_hash);
  for (const SweepRow& r : result.rows) {
    out << (r.instance < 0 ? std::string("mean") : std::to_string(r.instance)) << ','
        << csv_number(r.beta) << ',' << csv_number(r.lambda) << ',' << csv_number(r.z_exact)
        << ',' << csv_number(r.p_exact) << ',' << r.shots << ',' << r.heads << ','
        << csv_number(r.p_hat) << ',' << csv_number(r.p_hat_sigma) << ',';
    if (result.noisy) {
      out << r.layers << ',' << csv_number(r.p_noisy_exact) << ',' << r.noisy_heads << ','
          << csv_number(r.p_noisy_hat) << ',' << csv_number(r.p_noisy_sigma) << ','
          << csv_number(r.p_mitigated) << ',' << csv_number(r.mitigated_sigma) << ','
          << (r.clamped ? 1 : 0) << ',';
    } else {
      out << ",,,,,,,,";
    }
    out << r.seed << ',' << hash << '\n';
  }
}

nlohmann::json sweep_summary(const SweepResult& result, const ExperimentConfig& config) {
  nlohmann::json curve = nlohmann::json::array();
  for (const SweepRow& r : result.rows) {
    if (r.instance >= 0) continue;
    nlohmann::json point = {{"beta", r.beta},
                            {"p_exact", r.p_exact},
                            {"p_hat", r.p_hat},
                            {"p_hat_sigma", r.p_hat_sigma}};
    if (result.noisy) {
      point["p_noisy_hat"] = r.p_noisy_hat;
      point["p_mitigated"] = r.p_mitigated;
      point["mitigated_sigma"] = number_or_null(r.mitigated_sigma);
    }
    curve.push_back(point);
  }
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"kind", "sweep"},
                      {"model", std::string(model_name(config.model))},
                      {"n_qubits", config.total_qubits()},
                      {"instances", config.instances},
                      {"shots", config.shots},
                      {"seed", config.seed},
                      {"config_hash", hex64(result.config_hash)},
                      {"rows", result.rows.size()},
                      {"averaged", curve}};
  if (result.noisy) {
    j["xi"] = *config.xi;
    j["layers"] = config.layers;
    j["mitigated_within_2sigma"] = {
        {"instance_rows", number_or_null(mitigated_agreement(result, false))},
        {"averaged_rows", number_or_null(mitigated_agreement(result, true))}};
  }
  return j;
}

// ---------------------------------------------------------------- coverage

double CoverageReport::coverage() const {
  int reps = 0;
  int covered = 0;
  for (const CoverageCell& c : cells) {
    reps += c.repetitions;
    covered += c.covered;
  }
  return reps ? static_cast<double>(covered) / reps : 0.0;
}

CoverageReport run_coverage(const ExperimentConfig& config, Algorithm algorithm) {
  config.validate();
  const std::vector<Instance> instances = build_instances(config);
  const std::size_t n_beta = config.betas.size();
  const std::size_t n_cells = instances.size() * n_beta;
  const auto reps = static_cast<std::size_t>(config.repetitions);
  const int n = config.total_qubits();

  struct Trial {
    double relative_error = 0.0;
    double samples = 0.0;
    double queries = 0.0;
    double rounds = 0.0;
  };

  CoverageReport report;
  report.algorithm = algorithm;
  report.eps_r = config.eps_r;
  report.delta = config.delta;
  report.config_hash = config_hash(config);
  report.cells.resize(n_cells);

  std::vector<std::optional<CoinSpec>> coins(n_cells);
  parallel_for(n_cells, [&](std::size_t c) {
    const std::size_t i = c / n_beta;
    const std::size_t b = c % n_beta;
    coins[c] = make_coin(instances[i].unit, config.betas[b], config.eps_prime);
    CoverageCell& cell = report.cells[c];
    cell.instance = static_cast<int>(i);
    cell.beta = config.betas[b];
    cell.z_exact = exact_partition_function(instances[i].unit, cell.beta);
    cell.repetitions = config.repetitions;
    cell.seed = task_seed(config.seed, 1 + i, b);
  });

  std::vector<Trial> trials(n_cells * reps);
  parallel_for(n_cells * reps, [&](std::size_t t) {
    const std::size_t c = t / reps;
    const std::size_t r = t % reps;
    const CoverageCell& cell = report.cells[c];
    const CoinSpec& coin = *coins[c];
    const std::uint64_t seed = derive_seed(cell.seed, r);
    Estimate est;
    Trial trial;
    switch (algorithm) {
      case Algorithm::kSuccessProbability: {
        const std::uint64_t s =
            sample_count_thm1(n, cell.beta, cell.z_exact, config.eps_r, config.delta);
        est = algorithm1(coin, s, config.delta, seed);
        break;
      }
      case Algorithm::kTrialsToSuccess:
        est = algorithm2(coin, success_count_thm2(config.eps_r, config.delta), config.delta,
                         seed)
                  .estimate;
        break;
      case Algorithm::kIterative: {
        const IterativeResult it =
            relative_from_additive(algorithm1_additive_runner(coin, seed),
                                   max_partition_function(n, cell.beta), config.eps_r,
                                   config.delta);
        est = it.estimate;
        trial.rounds = it.rounds;
        break;
      }
    }
    trial.relative_error = std::abs(est.value - cell.z_exact) / cell.z_exact;
    trial.samples = static_cast<double>(est.samples_used);
    trial.queries = static_cast<double>(est.queries_used);
    trials[t] = trial;
  });

  for (std::size_t c = 0; c < n_cells; ++c) {
    CoverageCell& cell = report.cells[c];
    std::vector<double> rounds;
    for (std::size_t r = 0; r < reps; ++r) {
      const Trial& trial = trials[c * reps + r];
      if (trial.relative_error <= config.eps_r) ++cell.covered;
      cell.mean_relative_error += trial.relative_error;
      cell.mean_samples += trial.samples;
      cell.mean_queries += trial.queries;
      rounds.push_back(trial.rounds);
    }
    cell.mean_relative_error /= static_cast<double>(reps);
    cell.mean_samples /= static_cast<double>(reps);
    cell.mean_queries /= static_cast<double>(reps);
    const double p = success_probability(*coins[c]);
    switch (algorithm) {
      case Algorithm::kSuccessProbability:
        cell.predicted_samples = static_cast<double>(
            sample_count_thm1(n, cell.beta, cell.z_exact, config.eps_r, config.delta));
        break;
      case Algorithm::kTrialsToSuccess: {
        const double s_suc = static_cast<double>(success_count_thm2(config.eps_r, config.delta));
        cell.predicted_samples = s_suc / p;
        cell.predicted_samples_sigma =
            std::sqrt(s_suc * (1.0 - p)) / p / std::sqrt(static_cast<double>(reps));
        break;
      }
      case Algorithm::kIterative:
        cell.predicted_samples = kNaN;
        cell.median_rounds = median(rounds);
        cell.predicted_rounds = std::log2(max_partition_function(n, cell.beta) / cell.z_exact);
        break;
    }
  }
  return report;
}

nlohmann::json coverage_to_json(const CoverageReport& report, const ExperimentConfig& config) {
  nlohmann::json cells = nlohmann::json::array();
  for (const CoverageCell& c : report.cells) {
    nlohmann::json cell = {{"instance", c.instance},
                           {"beta", c.beta},
                           {"z_exact", c.z_exact},
                           {"repetitions", c.repetitions},
                           {"covered", c.covered},
                           {"coverage", c.coverage()},
                           {"mean_relative_error", c.mean_relative_error},
                           {"mean_samples", c.mean_samples},
                           {"mean_queries", c.mean_queries},
                           {"predicted_samples", number_or_null(c.predicted_samples)},
                           {"seed", c.seed}};
    if (report.algorithm == Algorithm::kTrialsToSuccess) {
      cell["predicted_samples_sigma"] = number_or_null(c.predicted_samples_sigma);
    }
    if (report.algorithm == Algorithm::kIterative) {
      cell["median_rounds"] = c.median_rounds;
      cell["predicted_rounds"] = number_or_null(c.predicted_rounds);
    }
    cells.push_back(cell);
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "coverage"},
          {"algorithm", std::string(algorithm_name(report.algorithm))},
          {"model", std::string(model_name(config.model))},
          {"n_qubits", config.total_qubits()},
          {"eps_r", report.eps_r},
          {"delta", report.delta},
          {"target_confidence", 1.0 - report.delta},
          {"coverage", report.coverage()},
          {"seed", config.seed},
          {"config_hash", hex64(report.config_hash)},
          {"cells", cells}};
}

// ---------------------------------------------------------------- noise fit

NoiseFitReport run_noise_fit(const LayerSeries& series, const FitOptions& options) {
  NoiseFitReport report;
  report.fit = fit_noise_model(series, options);
  const double xi = report.fit.model.xi;
  const double p = report.fit.p_hat;
  for (int depth = series.depths.front(); depth <= series.depths.back(); ++depth) {
    const double s = std::pow(1.0 - xi, depth);
    const double d_xi = -depth * std::pow(1.0 - xi, depth - 1) * (p - 0.5);
    const double a = d_xi * report.fit.model.xi_sigma;
    const double b = s * report.fit.p_sigma;
    report.curve.push_back({depth, noisy_success_probability(p, xi, depth),
                            std::sqrt(a * a + b * b)});
  }
  return report;
}

nlohmann::json noise_fit_to_json(const NoiseFitReport& report) {
  nlohmann::json j = fit_to_json(report.fit);
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "noise_fit";
  j["iterations"] = report.fit.iterations;
  j["weighting"] = report.fit.weighting == FitWeighting::kBinomial ? "binomial" : "unweighted";
  return j;
}

void write_fit_curve_csv(std::ostream& out, const NoiseFitReport& report) {
  out << "depth,fitted_p,sigma,lower,upper\n";
  for (const CurvePoint& c : report.curve) {
    out << c.depth << ',' << csv_number(c.fitted) << ',' << csv_number(c.sigma) << ','
        << csv_number(c.fitted - c.sigma) << ',' << csv_number(c.fitted + c.sigma) << '\n';
  }
}

// ---------------------------------------------------------------- fragment

std::vector<FragmentRow> run_fragment(const ExperimentConfig& config) {
  config.validate();
  const std::vector<Instance> instances = build_instances(config);
  const int n = config.total_qubits();
  struct Task {
    std::size_t instance;
    std::size_t beta;
    int steps;
    bool equal;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t b = 0; b < config.betas.size(); ++b) {
      for (int l : config.steps) {
        tasks.push_back({i, b, l, false});
        tasks.push_back({i, b, l, true});
      }
    }
  }
  std::vector<FragmentRow> rows(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t t) {
    const Task& task = tasks[t];
    const Hamiltonian& h = instances[task.instance].unit;
    const double beta = config.betas[task.beta];
    const Schedule s = task.equal ? equal_probability_schedule(h, beta, task.steps, config.eps_prime)
                                  : uniform_schedule(beta, task.steps, config.eps_prime);
    FragmentRow row;
    row.instance = static_cast<int>(task.instance);
    row.beta = beta;
    row.steps = task.steps;
    row.schedule = task.equal ? "equal_probability" : "uniform";
    row.p_total = 1.0;
    row.min_step_p = 1.0;
    for (int k = 1; k <= s.steps(); ++k) {
      const double pk = step_success_probability(h, s, k);
      row.p_total *= pk;
      row.min_step_p = std::min(row.min_step_p, pk);
    }
    row.p_unfragmented = ideal_success_probability(h, beta);
    row.b = -std::log2(row.min_step_p);
    row.size_lower_bound =
        row.b > 0.0
            ? schedule_size_lower_bound(n, beta, exact_partition_function(h, beta), row.b)
            : 0.0;
    row.expected_queries = expected_queries_per_success(h, s);
    row.query_bound = average_query_bound(h, s);
    row.unfragmented_queries =
        static_cast<double>(query_cost(beta, config.eps_prime)) / row.p_unfragmented;
    row.seed = task_seed(config.seed, 1 + task.instance, t);
    const FragmentedRun run = toss_fragmented(h, s, config.shots, row.seed);
    row.traversals = run.successes;
    row.attempts = run.stream.size();
    row.empirical_queries = run.queries_per_success();
    rows[t] = row;
  });
  return rows;
}

void write_fragment_csv(std::ostream& out, const std::vector<FragmentRow>& rows,
                        std::uint64_t config_hash) {
  out << "instance,beta,steps,schedule,p_total,p_unfragmented,min_step_p,b,size_lower_bound,"
         "expected_queries,query_bound,unfragmented_queries,traversals,attempts,"
         "empirical_queries,seed,config_hash\n";
  const std::string hash = hex64(config_hash);
  for (const FragmentRow& r : rows) {
    out << r.instance << ',' << csv_number(r.beta) << ',' << r.steps << ',' << r.schedule << ','
        << csv_number(r.p_total) << ',' << csv_number(r.p_unfragmented) << ','
        << csv_number(r.min_step_p) << ',' << csv_number(r.b) << ','
        << csv_number(r.size_lower_bound) << ',' << csv_number(r.expected_queries) << ','
        << csv_number(r.query_bound) << ',' << csv_number(r.unfragmented_queries) << ','
        << r.traversals << ',' << r.attempts << ',' << csv_number(r.empirical_queries) << ','
        << r.seed << ',' << hash << '\n';
  }
}

}  // namespace qcoin
