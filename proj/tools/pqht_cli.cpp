// Copyright 2026 The PQHT Authors
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

// pqht: full-coverage verification, noise sweeps, transpilation studies and
// OpenQASM export for the line-detection circuits.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "pqht/harness.hpp"

namespace h = pqht::harness;

namespace {

// Flags given on the command line, applied on top of the config file.
struct Overrides {
  std::map<std::string, std::string> values;
  std::string config_file;
  bool measure_all = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  auto opt = [&](const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.values[key] = v; }, help);
  };
  cmd->add_option("--config", o.config_file, "key=value config file (flags override it)");
  opt("--grid", "grid", "grid file: rows of 0/1, top row first");
  opt("--patterns", "patterns", "pattern file: <name> <angle> (col,row) ...");
  opt("--engine", "engine", "ideal | noisy");
  opt("--p1", "p1", "depolarising probability after 1-qubit gates");
  opt("--p2", "p2", "depolarising probability per operand after multi-qubit gates");
  opt("--r01", "r01", "readout flip probability 0->1");
  opt("--r10", "r10", "readout flip probability 1->0");
  opt("--coupling", "coupling", "none | heavy-hex-27");
  opt("--shots", "shots", "shots per input vector");
  opt("--seed", "seed", "base seed (routing seed; vector i samples with seed+i)");
  opt("--measure", "measure", "outputs | all");
  opt("--out", "out", "output directory");
  opt("--format", "format", "csv | json");
  cmd->add_flag("--measure-all", o.measure_all, "same as --measure all");
}

h::RunConfig resolve(const Overrides& o) {
  h::RunConfig config;
  if (!o.config_file.empty()) {
    std::string text;
    try {
      text = h::read_file(o.config_file);
    } catch (const h::IoError& e) {
      throw h::ConfigError(e.what());
    }
    h::apply_config_text(config, text);
  }
  for (const auto& [k, v] : o.values) h::apply_config_value(config, k, v);
  if (o.measure_all) config.measure = pqht::MeasureMode::All;
  config.finalize();
  return config;
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line-detection quantum circuits: build, simulate, verify, lower"};
  app.require_subcommand(1);

  Overrides cov_o, sweep_o, export_o, tr_o;
  auto* coverage = app.add_subcommand("coverage", "run every input vector against the truth table");
  add_common(coverage, cov_o);

  auto* sweep = app.add_subcommand("sweep", "certainty per engine for vectors containing targets");
  add_common(sweep, sweep_o);
  std::string targets;
  sweep->add_option("--targets", targets, "comma-separated pattern names (default: all)");

  auto* exporter = app.add_subcommand("export-qasm", "write one OpenQASM 2.0 file per vector");
  add_common(exporter, export_o);

  auto* transpile = app.add_subcommand("transpile-report", "lowering metrics for every vector");
  add_common(transpile, tr_o);

  auto* gadgets = app.add_subcommand("gadgets", "exhaustive adder/comparator/threshold checks");
  int mutate_adder = -1;
  gadgets->add_option("--mutate-adder", mutate_adder,
                      "test hook: drop the N-th CX of the adder before checking")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : h::kConfigError;
  }

  try {
    if (coverage->parsed()) {
      const auto config = resolve(cov_o);
      const auto result = h::run_coverage(config);
      h::write_file(join(config.out_dir, "coverage.csv"), h::coverage_csv(result));
      h::write_file(join(config.out_dir, "coverage.json"), h::coverage_json(result, config));
      if (config.format == "json") {
        std::cout << h::coverage_json(result, config);
      } else {
        std::cout << h::coverage_csv(result);
      }
      std::cerr << "coverage: " << result.pass_count << "/" << result.records.size()
                << " vectors pass\n";
      return result.all_pass() ? h::kPass : h::kVerificationFailure;
    }
    if (sweep->parsed()) {
      if (!targets.empty()) sweep_o.values["targets"] = targets;
      const auto config = resolve(sweep_o);
      const auto rows = h::run_sweep(config);
      const std::string text = config.format == "json" ? h::sweep_json(rows) : h::sweep_csv(rows);
      h::write_file(join(config.out_dir, "sweep." + config.format), text);
      std::cout << text;
      return h::kPass;
    }
    if (exporter->parsed()) {
      const auto config = resolve(export_o);
      const auto summary = h::export_qasm(config, config.out_dir);
      std::cerr << "wrote " << summary.files.size() << " circuits and " << summary.manifest_path
                << "\n";
      return h::kPass;
    }
    if (transpile->parsed()) {
      const auto config = resolve(tr_o);
      const auto rows = h::run_transpile_report(config);
      const std::string text =
          config.format == "json" ? h::transpile_json(rows) : h::transpile_csv(rows);
      h::write_file(join(config.out_dir, "transpile." + config.format), text);
      std::cout << text;
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.equivalent;
      return ok ? h::kPass : h::kVerificationFailure;
    }
    if (gadgets->parsed()) {
      h::GadgetHooks hooks;
      if (mutate_adder >= 0) {
        hooks.mutate_adder = [n = static_cast<std::size_t>(mutate_adder)](pqht::QuantumCircuit& c) {
          std::size_t seen = 0;
          for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i].kind == pqht::GateKind::CX && seen++ == n) {
              c.erase(i);
              return;
            }
          }
        };
      }
      const auto report = h::run_gadget_check(hooks);
      std::cout << report.text();
      return report.all_pass() ? h::kPass : h::kVerificationFailure;
    }
  } catch (const h::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return h::kConfigError;
  } catch (const h::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return h::kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return h::kVerificationFailure;
  }
  return h::kConfigError;
}
