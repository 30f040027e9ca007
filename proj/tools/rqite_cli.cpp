// Copyright 2026 The rqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rqite command-line front end. Every subcommand prints one JSON run report on
// stdout. Exit status: 0 success, 1 domain error, 2 usage error.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rqite/rqite.h"

namespace {

using json = nlohmann::json;

struct Failure {
  std::string code;
  std::string message;
  int exit_code;
};

[[noreturn]] void raise(rqite_status s) { throw Failure{rqite_status_string(s), rqite_last_error(), 1}; }

void check(rqite_status s) {
  if (s != RQITE_OK) raise(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"io_error", "cannot read '" + path + "'", 1};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Handles {
  std::unique_ptr<rqite_hamiltonian, void (*)(rqite_hamiltonian*)> h{nullptr, rqite_hamiltonian_free};
  std::unique_ptr<rqite_state, void (*)(rqite_state*)> psi{nullptr, rqite_state_free};
  std::unique_ptr<rqite_circuit, void (*)(rqite_circuit*)> u{nullptr, rqite_circuit_free};
};

// "re" or "re,im"
std::pair<double, double> parse_complex(const std::string& s) {
  try {
    const auto comma = s.find(',');
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::exception&) {
    throw Failure{"usage_error", "--beta expects re or re,im, got '" + s + "'", 2};
  }
}

// key = value lines into a JSON object; values that parse as numbers become
// numbers, comma lists become number arrays.
json parse_bench_spec(const std::string& text) {
  json out = json::object();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw Failure{"parse_error", "bench spec: expected key = value", 1};
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "orders") {
      json arr = json::array();
      std::istringstream vs(value);
      std::string item;
      while (std::getline(vs, item, ',')) arr.push_back(std::stod(trim(item)));
      out[key] = arr;
    } else {
      try {
        out[key] = std::stoull(value);
      } catch (const std::exception&) {
        throw Failure{"parse_error", "bench spec: '" + key + "' must be a non-negative integer", 1};
      }
    }
  }
  return out;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string pretty_table(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + '\n';
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state energy estimation by randomized imaginary-time evolution", "rqite"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", rqite_version());

  std::string config_path;
  int workers = 0;
  bool pretty = false, timing = false, normalize_coeffs = false;
  std::vector<std::string> limit_overrides;
  app.add_option("--config", config_path, "Cap overrides, one 'key = value' per line");
  app.add_option("--workers", workers, "Worker threads (default: RQITE_WORKERS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--limit", limit_overrides, "Override one cap, key=value");
  app.add_flag("--pretty", pretty, "Print a key/value table instead of JSON");
  app.add_flag("--timing", timing, "Add wall-clock timing to the report");
  app.add_flag("--normalize-coeffs", normalize_coeffs, "Divide coefficients by max |lambda| when parsing");

  std::string ham_path, state_path, circuit_path, bench_path, csv_path;
  json opts = json::object();

  // Options forwarded to the library only when given on the command line.
  struct Forward {
    CLI::Option* opt;
    std::string key;
    std::function<void(json&)> store;
  };
  std::vector<Forward> forwards;
  auto num = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    auto v = std::make_shared<double>();
    auto* o = sub->add_option(flag, *v, help);
    forwards.push_back({o, key, [v, key](json& j) { j[key] = *v; }});
    return o;
  };
  auto u64 = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    auto v = std::make_shared<std::uint64_t>();
    auto* o = sub->add_option(flag, *v, help);
    forwards.push_back({o, key, [v, key](json& j) { j[key] = *v; }});
    return o;
  };
  auto str = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    auto v = std::make_shared<std::string>();
    auto* o = sub->add_option(flag, *v, help);
    forwards.push_back({o, key, [v, key](json& j) { j[key] = *v; }});
    return o;
  };
  auto flag = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
    auto v = std::make_shared<bool>(false);
    auto* o = sub->add_flag(name, *v, help);
    forwards.push_back({o, key, [v, key](json& j) { j[key] = *v; }});
    return o;
  };
  auto beta_complex = std::make_shared<std::string>();

  auto* oracle = app.add_subcommand("oracle", "Exact diagonalisation: E0, gap, p0");
  oracle->add_option("--hamiltonian", ham_path, "Hamiltonian file")->required();
  oracle->add_option("--state", state_path, "Guiding state JSON");
  flag(oracle, "--eigenvalues", "eigenvalues", "Include the full spectrum");

  auto* partition = app.add_subcommand("partition", "Estimate D_beta(H - x)");
  partition->add_option("--hamiltonian", ham_path, "Hamiltonian file")->required();
  partition->add_option("--state", state_path, "Guiding state JSON")->required();
  partition->add_option("--circuit", circuit_path, "Preparation circuit (continuation backend)");
  str(partition, "--backend", "backend", "exact|cluster|mc|continuation")
      ->check(CLI::IsMember({"exact", "cluster", "mc", "continuation"}));
  auto* beta_opt = partition->add_option("--beta", *beta_complex, "beta as re or re,im")->required();
  num(partition, "--shift", "shift", "Energy shift x");
  num(partition, "--eps", "eps", "Target additive accuracy");
  u64(partition, "--seed", "seed", "RNG seed (mc)");
  u64(partition, "--shots", "shots", "Sample count (mc)");
  str(partition, "--mode", "mode", "expectation|bernoulli (mc)")->check(CLI::IsMember({"expectation", "bernoulli"}));
  num(partition, "--trunc-eps", "trunc_eps", "Cauchy truncation tail (mc)");
  num(partition, "--mu", "mu", "Failure probability (mc)");
  u64(partition, "--order", "order", "Series order (continuation)");
  num(partition, "--p0", "p0", "Promised ground overlap (continuation)");
  num(partition, "--gap", "gap", "Promised gap (continuation)");
  num(partition, "--nu", "nu", "Disk radius override (continuation)");

  auto* estimate = app.add_subcommand("estimate", "RQITE scan for the ground-state energy");
  estimate->add_option("--hamiltonian", ham_path, "Hamiltonian file")->required();
  estimate->add_option("--state", state_path, "Guiding state JSON")->required();
  num(estimate, "--gamma", "gamma", "Overlap lower bound gamma")->required();
  num(estimate, "--gap", "gap", "Gap lower bound")->required();
  num(estimate, "--eps", "eps", "Target accuracy")->required();
  num(estimate, "--ea", "ea", "Interval start")->required();
  num(estimate, "--eb", "eb", "Interval end")->required();
  str(estimate, "--backend", "backend", "exact|cluster|mc|continuation")
      ->check(CLI::IsMember({"exact", "cluster", "mc", "continuation"}));
  num(estimate, "--mu", "mu", "Failure probability");
  u64(estimate, "--seed", "seed", "RNG seed");
  str(estimate, "--mode", "mode", "expectation|bernoulli (mc)")->check(CLI::IsMember({"expectation", "bernoulli"}));
  str(estimate, "--normalize", "normalize", "none|exact|bound")->check(CLI::IsMember({"none", "exact", "bound"}));
  u64(estimate, "--order", "order", "Series order (continuation)");
  num(estimate, "--p0", "p0", "Promised ground overlap (continuation)");

  auto* clusters = app.add_subcommand("clusters", "Connected-cluster counts against |S|(e d)^m");
  clusters->add_option("--hamiltonian", ham_path, "Hamiltonian file")->required();
  u64(clusters, "--max-m", "max_m", "Largest cluster size");

  auto* mc = app.add_subcommand("mc", "Hadamard-test Monte-Carlo estimate of D_beta(H - x)");
  mc->add_option("--hamiltonian", ham_path, "Hamiltonian file")->required();
  mc->add_option("--state", state_path, "Guiding state JSON")->required();
  num(mc, "--beta", "beta", "Imaginary time beta")->required();
  num(mc, "--trunc-eps", "trunc_eps", "Cauchy truncation tail");
  u64(mc, "--shots", "shots", "Sample count");
  str(mc, "--mode", "mode", "expectation|bernoulli")->check(CLI::IsMember({"expectation", "bernoulli"}));
  u64(mc, "--seed", "seed", "RNG seed");
  num(mc, "--shift", "shift", "Energy shift x");
  num(mc, "--mu", "mu", "Failure probability for the reported radius");

  auto* cont = app.add_subcommand("continue", "Analytically continued log D_beta(H' - x)");
  cont->add_option("--hamiltonian", ham_path, "Hamiltonian file")->required();
  cont->add_option("--state", state_path, "Single product guiding state JSON");
  cont->add_option("--circuit", circuit_path, "Preparation circuit U with psi = U|0...0>");
  auto* cb = num(cont, "--beta", "beta", "Imaginary time beta");
  auto* cr = num(cont, "--beta-ratio", "beta_ratio", "beta as a multiple of beta*");
  cb->excludes(cr);
  u64(cont, "--order", "order", "Series order M (default: planned order)");
  num(cont, "--nu", "nu", "Disk radius override");
  num(cont, "--shift", "shift", "Energy shift x");
  num(cont, "--eps", "eps", "Target accuracy for the order plan");
  num(cont, "--p0", "p0", "Promised ground overlap");
  num(cont, "--gap", "gap", "Promised gap");
  num(cont, "--poly-n", "poly_n", "Amplitude-floor term added to F_max");
  num(cont, "--e-bound", "e_bound", "Energy scale in F_max");

  auto* bench = app.add_subcommand("bench", "Timing sweeps for enumeration and moments");
  bench->add_option("--spec", bench_path, "Benchmark spec, key = value lines");
  bench->add_option("--csv", csv_path, "Also write the timing table as CSV");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in example checks");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    std::cout << json{{"version", rqite_version()}, {"error", {{"code", "usage_error"}, {"message", e.what()}}}}.dump()
              << '\n';
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  std::vector<std::string> warnings;
  rqite_set_warning_callback(
      [](const char* msg, void* ud) { static_cast<std::vector<std::string>*>(ud)->push_back(msg); }, &warnings);

  json report{{"command", command}, {"version", rqite_version()}};
  const auto t0 = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    if (workers > 0) check(rqite_set_workers(workers));
    if (!config_path.empty()) check(rqite_apply_config(read_file(config_path).c_str()));
    for (const auto& kv : limit_overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Failure{"usage_error", "--limit expects key=value", 2};
      check(rqite_set_limit(kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }

    for (const auto& f : forwards)
      if (f.opt->count() > 0) f.store(opts);
    if (beta_opt->count() > 0) {
      const auto [re, im] = parse_complex(*beta_complex);
      opts["beta_re"] = re;
      opts["beta_im"] = im;
    }

    Handles in;
    json inputs = json::object();
    if (!ham_path.empty()) {
      const std::string text = read_file(ham_path);
      rqite_hamiltonian* h = nullptr;
      double scale = 1.0;
      check(rqite_hamiltonian_parse(text.c_str(), normalize_coeffs ? 1 : 0, &h, &scale));
      in.h.reset(h);
      inputs["hamiltonian"] = {{"path", ham_path}, {"fnv1a", fnv1a(text)}};
      if (normalize_coeffs) inputs["hamiltonian"]["coefficient_scale"] = scale;
    }
    if (!state_path.empty()) {
      const std::string text = read_file(state_path);
      rqite_state* s = nullptr;
      check(rqite_state_from_json(text.c_str(), &s));
      in.psi.reset(s);
      inputs["state"] = {{"path", state_path}, {"fnv1a", fnv1a(text)}};
    }
    if (!circuit_path.empty()) {
      const std::string text = read_file(circuit_path);
      rqite_circuit* c = nullptr;
      check(rqite_circuit_from_json(text.c_str(), &c));
      in.u.reset(c);
      inputs["circuit"] = {{"path", circuit_path}, {"fnv1a", fnv1a(text)}};
    }
    if (!bench_path.empty()) {
      const std::string text = read_file(bench_path);
      opts.update(parse_bench_spec(text));
      inputs["bench_spec"] = {{"path", bench_path}, {"fnv1a", fnv1a(text)}};
    }

    char* out = nullptr;
    const std::string opts_text = opts.dump();
    check(rqite_run_command(command.c_str(), opts_text.c_str(), in.h.get(), in.psi.get(), in.u.get(), &out));
    json payload = json::parse(out);
    rqite_string_free(out);

    report["config"] = payload["config"];
    report["inputs"] = inputs;
    report["seed"] = payload["config"].contains("seed") ? payload["config"]["seed"] : json(nullptr);
    report["result"] = payload["result"];
    if (command == "bench" && !csv_path.empty()) {
      std::ofstream csv(csv_path);
      if (!csv) throw Failure{"io_error", "cannot write '" + csv_path + "'", 1};
      csv << report["result"]["csv"].get<std::string>();
    }
    if (command == "selftest" && report["result"]["failed"].get<std::size_t>() > 0) exit_code = 1;
  } catch (const Failure& f) {
    report["error"] = {{"code", f.code}, {"message", f.message}};
    exit_code = f.exit_code;
  }
  report["warnings"] = warnings;
  if (timing)
    report["timing"] = {{"wall_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
  rqite_set_warning_callback(nullptr, nullptr);

  if (pretty)
    std::cout << pretty_table(report);
  else
    std::cout << report.dump() << '\n';
  return exit_code;
}
