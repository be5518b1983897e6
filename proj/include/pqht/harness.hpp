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

#pragma once

// Orchestration of the verification protocol behind the `pqht` CLI.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqht/builder.hpp"
#include "pqht/noise.hpp"
#include "pqht/oracle.hpp"
#include "pqht/transpiler.hpp"

namespace pqht::harness {

/// Malformed configuration; the CLI exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-system failure; the CLI exits with status 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kConfigError = 2, kIoError = 3 };

enum class Engine { Ideal, Noisy };

/// Noise used by the noisy engine when no parameter is given.
inline constexpr NoiseParams kDefaultNoise{0.001, 0.01, 0.02, 0.02};

struct RunConfig {
  std::string grid_file;      // empty: 3x3
  std::string patterns_file;  // empty: the four 3x3 line patterns
  Engine engine = Engine::Ideal;
  std::optional<NoiseParams> noise;  // set iff engine == Noisy after finalize()
  std::string coupling = "none";     // none | heavy-hex-27
  std::uint64_t shots = 2048;
  std::uint64_t seed = 20;
  MeasureMode measure = MeasureMode::Outputs;
  std::string out_dir = "pqht-out";
  std::string format = "csv";  // csv | json
  std::vector<std::string> targets;

  /// Checks invariants and fills noise defaults. Throws ConfigError.
  void finalize();
};

/// Applies `key=value` lines (keys as the long CLI flags without dashes:
/// grid, patterns, engine, p1, p2, r01, r10, coupling, shots, seed,
/// measure, out, format, targets). '#' starts a comment. Throws ConfigError.
void apply_config_text(RunConfig& config, const std::string& text);
/// Applies one key/value pair with the same rules.
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Grid dimensions, patterns and truth table resolved from a config.
struct Problem {
  std::size_t width = 3;
  std::size_t height = 3;
  std::vector<PatternSpec> patterns;
  TruthTable table;
};

Problem load_problem(const RunConfig& config);
std::optional<CouplingMap> load_coupling(const std::string& name);

/// The circuit that is executed for one truth-table row: built, and
/// transpiled when a coupling map is configured (routing seed = config seed).
QuantumCircuit circuit_for_row(const Problem& problem, const RunConfig& config, std::size_t row);

struct CoverageRecord {
  std::string input_bits;
  std::string expected;
  std::string argmax;
  double certainty = 0.0;
  bool pass = false;
};

struct CoverageResult {
  std::vector<CoverageRecord> records;
  std::size_t pass_count = 0;
  std::vector<std::size_t> failures;  // record indices
  bool all_pass() const { return pass_count == records.size(); }
};

/// Executes every truth-table row on the configured engine. Row i samples
/// with seed + i.
CoverageResult run_coverage(const RunConfig& config);
std::string coverage_csv(const CoverageResult& result);
std::string coverage_json(const CoverageResult& result, const RunConfig& config);

struct SweepRow {
  std::string target;
  std::string input_bits;
  std::string engine;
  double certainty = 0.0;
};

/// Certainty of the expected channel for every row containing each target,
/// per engine: ideal, noisy (engine == Noisy) and the *-transpiled variants
/// when a coupling map is set. Unknown targets throw ConfigError.
std::vector<SweepRow> run_sweep(const RunConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

struct ExportSummary {
  std::vector<std::string> files;
  std::string manifest_path;
};

/// Writes pqht_<bits>.qasm per row and manifest.json into `out_dir`.
/// Throws IoError.
ExportSummary export_qasm(const RunConfig& config, const std::string& out_dir);

struct TranspileRow {
  std::string input_bits;
  TranspileReport report;
  bool equivalent = false;
  double tv_distance = 0.0;
};

/// Transpiles every row (heavy-hex-27 if no coupling is configured) and
/// checks the lowered circuit against the logical one.
std::vector<TranspileRow> run_transpile_report(const RunConfig& config);
std::string transpile_csv(const std::vector<TranspileRow>& rows);
std::string transpile_json(const std::vector<TranspileRow>& rows);

struct GadgetHooks {
  /// Applied to the adder before it is checked (mutation testing).
  std::function<void(QuantumCircuit&)> mutate_adder;
};

struct GadgetCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::optional<std::string> counterexample;
};

struct GadgetReport {
  std::vector<GadgetCheck> checks;
  bool all_pass() const;
  std::string text() const;
};

/// Adder 64 cases, comparator 16 cases, every threshold unit with 2..7
/// inputs, and threshold(3,3) against the maxfinder cascade.
GadgetReport run_gadget_check(const GadgetHooks& hooks = {});

/// Writes `contents` to `path`, creating parent directories. Throws IoError.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace pqht::harness
