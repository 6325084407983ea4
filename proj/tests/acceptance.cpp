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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcoin/coin.hpp"
#include "qcoin/errors.hpp"
#include "qcoin/estimators.hpp"
#include "qcoin/experiment.hpp"
#include "qcoin/matfunc.hpp"
#include "qcoin/noise.hpp"
#include "qcoin/oracle.hpp"
#include "qcoin/rng.hpp"
#include "test_support.hpp"

namespace qcoin {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const char* name, double time_limit_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > time_limit_s) {
    out.pass = false;
    out.detail += " (over time limit " + std::to_string(time_limit_s) + " s)";
  }
  if (!out.pass) ++failures;
  std::printf("%s %s: %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", name, out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Hamiltonian ising_unit(int n, std::uint64_t seed) {
  return prepare_instance(generate_random_ising_graph(n, seed)).unit;
}

// Least-squares line y = a + b x; returns {slope, r_squared}.
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const auto m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double cxx = sxx - sx * sx / m;
  const double cxy = sxy - sx * sy / m;
  const double cyy = syy - sy * sy / m;
  return {cxy / cxx, cxy * cxy / (cxx * cyy)};
}

Verdict trace_identity() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> beta_dist(0.0, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 2;
    const Hamiltonian h(testing::random_hermitian(n, gen), 1.0);
    const double beta = beta_dist(gen);
    const double p = success_probability(CoinSpec::ideal(h, beta));
    const double z = testing::trace_exp(h.matrix(), beta);
    worst = std::max(worst, testing::relative_error(std::exp(beta) * std::ldexp(p, n), z));
  }
  return {worst <= 1e-12, fmt("max relative error %.3g (limit 1e-12)", worst)};
}

Verdict bias_bound() {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> beta_dist(0.0, 12.0);
  std::uniform_real_distribution<double> log_eps(-10.0, -1.0);
  double worst = 0.0;
  int violations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Hamiltonian h(testing::random_hermitian(1 + trial % 4, gen), 1.0);
    const double beta = beta_dist(gen);
    const double eps = std::pow(10.0, log_eps(gen));
    const double ideal = success_probability(CoinSpec::ideal(h, beta));
    const double approx = success_probability(CoinSpec::approximate(h, beta, eps));
    const double ratio = std::abs(approx - ideal) / eps;
    worst = std::max(worst, ratio);
    if (!(std::abs(approx - ideal) <= 3.0 * eps)) ++violations;
  }
  return {violations == 0,
          fmt("%.0f violations, max |bias|/eps' %.3g (limit 3)", violations, worst)};
}

ExperimentConfig coverage_config() {
  ExperimentConfig c;
  c.model = ModelKind::kIsing;
  c.n_qubits = 4;
  c.instances = 1;
  c.betas = {1.0};
  c.eps_r = 0.2;
  c.repetitions = 400;
  c.seed = 1;
  return c;
}

Verdict thm1_coverage() {
  ExperimentConfig c = coverage_config();
  c.delta = 0.05;
  const CoverageReport r = run_coverage(c, Algorithm::kSuccessProbability);
  return {r.coverage() >= 0.93,
          fmt("coverage %.4f with S=%.0f (limit 0.93)", r.coverage(), r.cells[0].mean_samples)};
}

Verdict thm2_coverage() {
  ExperimentConfig c = coverage_config();
  c.delta = 0.25;
  const CoverageReport r = run_coverage(c, Algorithm::kTrialsToSuccess);
  const CoverageCell& cell = r.cells[0];
  const double gap = std::abs(cell.mean_samples - cell.predicted_samples);
  const bool pass = r.coverage() >= 0.70 && gap <= 3.0 * cell.predicted_samples_sigma;
  return {pass, fmt("coverage %.4f (limit 0.70); mean tosses %.2f vs predicted %.2f",
                    r.coverage(), cell.mean_samples, cell.predicted_samples) +
                    fmt(" (3 sigma = %.2f)", 3.0 * cell.predicted_samples_sigma)};
}

Verdict quantiles() {
  const double a = z_quantile(0.05);
  const double b = z_quantile(1e-9);
  return {std::abs(a - 1.96) <= 0.005 && std::abs(b - 6.11) <= 0.01,
          fmt("z(0.05)=%.6f, z(1e-9)=%.6f", a, b)};
}

Verdict degree_scaling() {
  std::vector<double> log_beta, log_degree;
  for (int i = 0; i < 9; ++i) {
    const double beta = std::pow(2.0, i);  // 1 .. 256
    log_beta.push_back(std::log(beta));
    log_degree.push_back(std::log(static_cast<double>(required_degree(beta, 1e-3))));
  }
  const double exponent = line_fit(log_beta, log_degree).first;
  std::vector<double> log_inv_eps, degree;
  for (int k = 1; k <= 12; ++k) {
    log_inv_eps.push_back(k * std::log(10.0));
    degree.push_back(required_degree(4.0, std::pow(10.0, -k)));
  }
  const double r2 = line_fit(log_inv_eps, degree).second;
  return {exponent >= 0.4 && exponent <= 0.6 && r2 >= 0.98,
          fmt("exponent %.4f (range [0.4, 0.6]); R^2 at beta=4 %.4f (limit 0.98)", exponent,
              r2)};
}

Verdict fragmentation() {
  const int n = 4;
  const Hamiltonian h = ising_unit(n, 1);
  const double beta = 4.0;
  const double p_full = ideal_success_probability(h, beta);
  double worst_product = 0.0;
  double worst_z = 0.0;
  double worst_bound_ratio = 0.0;
  bool exact_ok = true;
  for (int l : {1, 2, 4, 8}) {
    for (bool equal : {false, true}) {
      const Schedule ideal = equal ? equal_probability_schedule(h, beta, l, 0.0)
                                   : uniform_schedule(beta, l, 0.0);
      double product = 1.0;
      for (int k = 1; k <= l; ++k) product *= step_success_probability(h, ideal, k);
      worst_product = std::max(worst_product, std::abs(product / p_full - 1.0));

      const Schedule s = equal ? equal_probability_schedule(h, beta, l, 1e-4)
                               : uniform_schedule(beta, l, 1e-4);
      double p_total = 1.0;
      for (int k = 1; k <= l; ++k) p_total *= step_success_probability(h, s, k);
      const FragmentedRun run =
          toss_fragmented(h, s, 10000, derive_seed(1, static_cast<std::uint64_t>(2 * l + equal)));
      const double traversals = static_cast<double>(run.stream.size());
      const double freq = static_cast<double>(run.successes) / traversals;
      worst_z = std::max(worst_z,
                         std::abs(freq - p_total) / std::sqrt(p_total * (1.0 - p_total) / traversals));
      if (equal) {
        const double bound = average_query_bound(h, s);
        exact_ok = exact_ok && expected_queries_per_success(h, s) <= bound * (1.0 + 1e-12);
        worst_bound_ratio = std::max(worst_bound_ratio, run.queries_per_success() / bound);
      }
    }
  }
  const bool pass = worst_product <= 1e-12 && worst_z <= 3.0 && exact_ok &&
                    worst_bound_ratio <= 1.1;
  return {pass, fmt("product rel. error %.3g (limit 1e-12); worst frequency deviation %.2f sigma "
                    "(limit 3); empirical/bound queries %.3f (limit 1.1)",
                    worst_product, worst_z, worst_bound_ratio) +
                    (exact_ok ? "" : "; expected queries exceed bound")};
}

Verdict noise_round_trip() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> p_dist(0.0, 1.0);
  std::uniform_real_distribution<double> xi_dist(0.0, 0.1);
  std::uniform_int_distribution<int> layer_dist(1, 20);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double p = p_dist(gen);
    const double xi = xi_dist(gen);
    const int layers = layer_dist(gen);
    const Mitigated m = mitigate(noisy_success_probability(p, xi, layers), {xi, 0.0}, layers);
    worst = std::max(worst, std::abs(m.value - p));
  }
  int covered = 0;
  int failed_fits = 0;
  const std::vector<int> depths = identity_insertion_depths(10, 5);
  for (int t = 0; t < 500; ++t) {
    const LayerSeries s =
        simulate_layer_series(0.38, 0.037, depths, 3000, static_cast<std::uint64_t>(t));
    try {
      const NoiseFit f = fit_noise_model(s);
      if (std::abs(f.model.xi - 0.037) <= 2.0 * f.model.xi_sigma) ++covered;
    } catch (const FitError&) {
      ++failed_fits;
    }
  }
  const double coverage = covered / 500.0;
  return {worst <= 1e-12 && coverage >= 0.9,
          fmt("round trip max error %.3g (limit 1e-12); fit coverage %.3f (limit 0.90), ", worst,
              coverage) +
              std::to_string(failed_fits) + " failed fits"};
}

Verdict end_to_end() {
  ExperimentConfig ising;
  ising.model = ModelKind::kIsing;
  ising.n_qubits = 4;
  ising.betas = {0.2, 1.0, 2.0, 4.0, 10.0};
  ising.layers = 12;
  ExperimentConfig qrbm;
  qrbm.model = ModelKind::kQrbm;
  qrbm.n_visible = 2;
  qrbm.n_hidden = 2;
  qrbm.betas = {0.02, 0.2, 0.5, 1.0, 1.6};
  qrbm.layers = 10;
  double worst = 1.0;
  std::string detail;
  for (ExperimentConfig* c : {&ising, &qrbm}) {
    c->instances = 5;
    c->shots = 3000;
    c->xi = 0.037;
    c->seed = 1;
    const SweepResult r = run_sweep(*c);
    const double frac = mitigated_agreement(r, false);
    worst = std::min(worst, frac);
    detail += std::string(model_name(c->model)) + fmt(" %.2f (averaged curve %.2f); ", frac,
                                                      mitigated_agreement(r, true));
  }
  return {worst >= 0.9, detail + "limit 0.90"};
}

}  // namespace
}  // namespace qcoin

int main() {
  using namespace qcoin;
  run("trace identity", 10.0, trace_identity);
  run("approximation bias bound", 30.0, bias_bound);
  run("algorithm 1 coverage", 600.0, thm1_coverage);
  run("algorithm 2 coverage", 600.0, thm2_coverage);
  run("normal quantiles", 1.0, quantiles);
  run("degree scaling", 600.0, degree_scaling);
  run("fragmentation", 600.0, fragmentation);
  run("noise round trip", 600.0, noise_round_trip);
  run("end-to-end sweeps", 300.0, end_to_end);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
