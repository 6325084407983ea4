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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qcoin/errors.hpp"
#include "qcoin/hamiltonian.hpp"

namespace qcoin {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    parts.push_back(trim(s.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  std::from_chars_result result{};
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is available in libstdc++ 11.
    result = std::from_chars(begin, end, value, std::chars_format::general);
  } else {
    result = std::from_chars(begin, end, value);
  }
  if (text.empty() || result.ec != std::errc() || result.ptr != end) {
    throw InputError("config field '" + std::string(key) + "': cannot parse '" +
                     std::string(text) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  for (std::string_view part : split_list(text)) {
    out.push_back(parse_number<T>(key, part));
  }
  return out;
}

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) {
    throw InputError("config field '" + std::string(field) + "': " + message);
  }
}

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  return kind == ModelKind::kIsing ? "ising" : "qrbm";
}

int ExperimentConfig::total_qubits() const {
  return model == ModelKind::kIsing ? n_qubits : n_visible + n_hidden;
}

void ExperimentConfig::validate() const {
  if (model == ModelKind::kIsing) {
    require(n_qubits >= 2 && n_qubits <= kMaxQubits, "n_qubits",
            "must lie in [2, " + std::to_string(kMaxQubits) + "]");
  } else {
    require(n_visible >= 1, "n_visible", "must be >= 1");
    require(n_hidden >= 1, "n_hidden", "must be >= 1");
    require(n_visible + n_hidden <= kMaxQubits, "n_hidden",
            "n_visible + n_hidden exceeds " + std::to_string(kMaxQubits));
    require(std::isfinite(transverse_scale), "transverse_scale", "must be finite");
  }
  require(instances >= 1, "instances", "must be >= 1");
  require(!betas.empty(), "betas", "must not be empty");
  for (double b : betas) {
    require(b >= 0.0 && std::isfinite(b), "betas", "must be finite and >= 0");
  }
  require(shots >= 1, "shots", "must be >= 1");
  require(delta > 0.0 && delta < 1.0, "delta", "must lie in (0, 1)");
  require(eps_r > 0.0 && eps_r < 1.0, "eps_r", "must lie in (0, 1)");
  require(eps_prime >= 0.0 && eps_prime <= 1.0, "eps_prime", "must lie in [0, 1]");
  if (xi) {
    require(*xi >= 0.0 && *xi < 1.0, "xi", "must lie in [0, 1)");
  }
  require(mitigation_xi_sigma >= 0.0, "xi_sigma", "must be >= 0");
  require(layers >= 0, "layers", "must be >= 0");
  require(repetitions >= 1, "repetitions", "must be >= 1");
  require(!steps.empty(), "steps", "must not be empty");
  for (int l : steps) {
    require(l >= 1, "steps", "must all be >= 1");
  }
  require(!output_dir.empty(), "output_dir", "must not be empty");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream out;
  out << "model = " << model_name(model) << '\n';
  out << "n_qubits = " << n_qubits << '\n';
  out << "n_visible = " << n_visible << '\n';
  out << "n_hidden = " << n_hidden << '\n';
  out << "transverse_scale = " << format_double(transverse_scale) << '\n';
  out << "instances = " << instances << '\n';
  out << "betas = ";
  for (std::size_t i = 0; i < betas.size(); ++i) {
    out << (i ? "," : "") << format_double(betas[i]);
  }
  out << '\n';
  out << "shots = " << shots << '\n';
  out << "delta = " << format_double(delta) << '\n';
  out << "eps_r = " << format_double(eps_r) << '\n';
  out << "eps_prime = " << format_double(eps_prime) << '\n';
  out << "xi = " << (xi ? format_double(*xi) : std::string("none")) << '\n';
  out << "xi_sigma = " << format_double(mitigation_xi_sigma) << '\n';
  out << "layers = " << layers << '\n';
  out << "repetitions = " << repetitions << '\n';
  out << "steps = ";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out << (i ? "," : "") << steps[i];
  }
  out << '\n';
  out << "seed = " << seed << '\n';
  return out.str();
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "model") {
    if (value == "ising") {
      c.model = ModelKind::kIsing;
    } else if (value == "qrbm") {
      c.model = ModelKind::kQrbm;
    } else {
      throw InputError("config field 'model': expected ising or qrbm, got '" +
                       std::string(value) + "'");
    }
  } else if (key == "n_qubits") {
    c.n_qubits = parse_number<int>(key, value);
  } else if (key == "n_visible") {
    c.n_visible = parse_number<int>(key, value);
  } else if (key == "n_hidden") {
    c.n_hidden = parse_number<int>(key, value);
  } else if (key == "transverse_scale") {
    c.transverse_scale = parse_number<double>(key, value);
  } else if (key == "instances") {
    c.instances = parse_number<int>(key, value);
  } else if (key == "betas" || key == "beta") {
    c.betas = parse_list<double>(key, value);
  } else if (key == "shots") {
    c.shots = parse_number<std::uint64_t>(key, value);
  } else if (key == "delta") {
    c.delta = parse_number<double>(key, value);
  } else if (key == "eps_r") {
    c.eps_r = parse_number<double>(key, value);
  } else if (key == "eps_prime") {
    c.eps_prime = parse_number<double>(key, value);
  } else if (key == "xi") {
    if (value == "none") {
      c.xi.reset();
    } else {
      c.xi = parse_number<double>(key, value);
    }
  } else if (key == "xi_sigma") {
    c.mitigation_xi_sigma = parse_number<double>(key, value);
  } else if (key == "layers") {
    c.layers = parse_number<int>(key, value);
  } else if (key == "repetitions") {
    c.repetitions = parse_number<int>(key, value);
  } else if (key == "steps") {
    c.steps = parse_list<int>(key, value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "output_dir") {
    c.output_dir = std::string(value);
  } else {
    throw InputError("unknown config field '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("config line " + std::to_string(number) + ": expected 'key = value'");
    }
    apply_setting(base, trim(view.substr(0, eq)), view.substr(eq + 1));
  }
  return base;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config.canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash_hex(const ExperimentConfig& config) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  return buffer;
}

}  // namespace qcoin
