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

#include "pqht/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pqht/gadgets.hpp"
#include "pqht/simulator.hpp"

namespace pqht::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_probability(const std::string& key, const std::string& value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": '" + value + "' is not a number");
  }
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(key + " must lie in [0, 1], got " + value);
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": '" + value + "' is not a non-negative integer");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

void apply_config_value(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  auto noise = [&]() -> NoiseParams& {
    if (!c.noise) c.noise = NoiseParams{};
    return *c.noise;
  };
  if (key == "grid") {
    c.grid_file = value;
  } else if (key == "patterns") {
    c.patterns_file = value;
  } else if (key == "engine") {
    if (value == "ideal") {
      c.engine = Engine::Ideal;
    } else if (value == "noisy") {
      c.engine = Engine::Noisy;
    } else {
      throw ConfigError("engine must be ideal or noisy, got '" + value + "'");
    }
  } else if (key == "p1") {
    noise().p1 = parse_probability(key, value);
  } else if (key == "p2") {
    noise().p2 = parse_probability(key, value);
  } else if (key == "r01") {
    noise().r01 = parse_probability(key, value);
  } else if (key == "r10") {
    noise().r10 = parse_probability(key, value);
  } else if (key == "coupling") {
    if (value != "none" && value != "heavy-hex-27") {
      throw ConfigError("coupling must be none or heavy-hex-27, got '" + value + "'");
    }
    c.coupling = value;
  } else if (key == "shots") {
    c.shots = parse_count(key, value);
  } else if (key == "seed") {
    c.seed = parse_count(key, value);
  } else if (key == "measure") {
    if (value == "outputs") {
      c.measure = MeasureMode::Outputs;
    } else if (value == "all") {
      c.measure = MeasureMode::All;
    } else {
      throw ConfigError("measure must be outputs or all, got '" + value + "'");
    }
  } else if (key == "out") {
    c.out_dir = value;
  } else if (key == "format") {
    if (value != "csv" && value != "json") throw ConfigError("format must be csv or json");
    c.format = value;
  } else if (key == "targets") {
    c.targets.clear();
    std::stringstream ss(value);
    std::string t;
    while (std::getline(ss, t, ',')) {
      if (!trim(t).empty()) c.targets.push_back(trim(t));
    }
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void apply_config_text(RunConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void RunConfig::finalize() {
  if (shots == 0) throw ConfigError("shots must be at least 1");
  if (engine == Engine::Ideal && noise) {
    throw ConfigError("noise parameters require --engine noisy");
  }
  if (engine == Engine::Noisy && !noise) noise = kDefaultNoise;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

Problem load_problem(const RunConfig& config) {
  Problem pb;
  try {
    if (!config.grid_file.empty()) {
      const PixelGrid grid = parse_grid(read_file(config.grid_file));
      pb.width = grid.width();
      pb.height = grid.height();
    }
    pb.patterns = config.patterns_file.empty() ? default_3x3_patterns()
                                               : parse_patterns(read_file(config.patterns_file));
    pb.table = full_truth_table(pb.width, pb.height, pb.patterns);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return pb;
}

std::optional<CouplingMap> load_coupling(const std::string& name) {
  if (name == "none") return std::nullopt;
  if (name == "heavy-hex-27") return heavy_hex_27();
  throw ConfigError("unknown coupling map '" + name + "'");
}

QuantumCircuit circuit_for_row(const Problem& problem, const RunConfig& config, std::size_t row) {
  const auto grid =
      grid_from_vector(problem.width, problem.height, problem.table.layout, problem.table[row].input);
  auto built = build_pqht(grid, problem.patterns, {CoincidenceKind::Maxfinder, config.measure});
  if (auto coupling = load_coupling(config.coupling)) {
    return transpile(built.circuit, *coupling, config.seed).circuit;
  }
  return std::move(built.circuit);
}

namespace {

/// Runs one circuit on an engine and returns the histogram restricted to the
/// unit outputs.
ShotHistogram execute(const QuantumCircuit& circuit, Engine engine, const NoiseParams& noise,
                      std::uint64_t shots, std::uint64_t seed, std::size_t num_outputs) {
  ShotHistogram hist;
  if (engine == Engine::Ideal) {
    hist = sample_shots(compact_qubits(circuit).first, shots, seed);
  } else {
    hist = sample_noisy_shots(circuit, noise, shots, seed);
  }
  if (hist.clbits.size() == num_outputs) return hist;
  std::vector<std::size_t> positions(num_outputs);
  for (std::size_t i = 0; i < num_outputs; ++i) positions[i] = i;
  return hist.marginal(positions);
}

}  // namespace

CoverageResult run_coverage(const RunConfig& config) {
  const Problem pb = load_problem(config);
  const NoiseParams noise = config.noise.value_or(NoiseParams{});
  CoverageResult result;
  for (std::size_t i = 0; i < pb.table.size(); ++i) {
    const auto circuit = circuit_for_row(pb, config, i);
    const auto hist =
        execute(circuit, config.engine, noise, config.shots, config.seed + i, pb.patterns.size());
    CoverageRecord rec;
    rec.input_bits = pb.table[i].input_bits();
    rec.expected = pb.table[i].output_bits();
    rec.argmax = hist.argmax();
    rec.certainty = certainty(hist, rec.expected);
    rec.pass = rec.argmax == rec.expected;
    if (rec.pass) {
      ++result.pass_count;
    } else {
      result.failures.push_back(i);
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::string coverage_csv(const CoverageResult& result) {
  std::ostringstream os;
  os << "input_bits,expected,argmax,certainty,pass\n";
  for (const auto& r : result.records) {
    os << r.input_bits << ',' << r.expected << ',' << r.argmax << ',' << format_double(r.certainty)
       << ',' << (r.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

namespace {

json config_json(const RunConfig& c) {
  json j;
  j["engine"] = c.engine == Engine::Ideal ? "ideal" : "noisy";
  if (c.noise) {
    j["noise"] = {{"p1", c.noise->p1}, {"p2", c.noise->p2}, {"r01", c.noise->r01},
                  {"r10", c.noise->r10}};
  }
  j["coupling"] = c.coupling;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["measure"] = c.measure == MeasureMode::Outputs ? "outputs" : "all";
  j["grid"] = c.grid_file.empty() ? "3x3" : c.grid_file;
  j["patterns"] = c.patterns_file.empty() ? "default-3x3" : c.patterns_file;
  return j;
}

}  // namespace

std::string coverage_json(const CoverageResult& result, const RunConfig& config) {
  json j;
  j["config"] = config_json(config);
  j["rows"] = result.records.size();
  j["pass_count"] = result.pass_count;
  json recs = json::array();
  for (const auto& r : result.records) {
    recs.push_back({{"input_bits", r.input_bits},
                    {"expected", r.expected},
                    {"argmax", r.argmax},
                    {"certainty", r.certainty},
                    {"pass", r.pass}});
  }
  j["records"] = std::move(recs);
  return j.dump(2) + "\n";
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  const Problem pb = load_problem(config);
  std::vector<std::size_t> targets;
  for (const auto& name : config.targets) {
    auto it = std::find_if(pb.patterns.begin(), pb.patterns.end(),
                           [&](const PatternSpec& p) { return p.name == name; });
    if (it == pb.patterns.end()) throw ConfigError("unknown pattern name '" + name + "'");
    targets.push_back(static_cast<std::size_t>(it - pb.patterns.begin()));
  }
  if (config.targets.empty()) {
    for (std::size_t k = 0; k < pb.patterns.size(); ++k) targets.push_back(k);
  }

  struct Column {
    std::string name;
    Engine engine;
    bool transpiled;
  };
  std::vector<Column> columns{{"ideal", Engine::Ideal, false}};
  if (config.coupling != "none") columns.push_back({"ideal-transpiled", Engine::Ideal, true});
  if (config.engine == Engine::Noisy) {
    columns.push_back({"noisy", Engine::Noisy, false});
    if (config.coupling != "none") columns.push_back({"noisy-transpiled", Engine::Noisy, true});
  }
  const NoiseParams noise = config.noise.value_or(NoiseParams{});

  std::map<std::pair<std::size_t, std::size_t>, double> cache;  // (row, column) -> certainty
  auto value = [&](std::size_t row, std::size_t col) {
    auto key = std::make_pair(row, col);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    RunConfig rc = config;
    if (!columns[col].transpiled) rc.coupling = "none";
    const auto circuit = circuit_for_row(pb, rc, row);
    const auto hist = execute(circuit, columns[col].engine, noise, config.shots, config.seed + row,
                              pb.patterns.size());
    const double c = certainty(hist, pb.table[row].output_bits());
    cache.emplace(key, c);
    return c;
  };

  std::vector<SweepRow> out;
  for (auto k : targets) {
    for (auto row : pb.table.rows_containing(k)) {
      for (std::size_t col = 0; col < columns.size(); ++col) {
        out.push_back({pb.patterns[k].name, pb.table[row].input_bits(), columns[col].name,
                       value(row, col)});
      }
    }
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "target,input_bits,engine,certainty\n";
  for (const auto& r : rows) {
    os << r.target << ',' << r.input_bits << ',' << r.engine << ',' << format_double(r.certainty)
       << '\n';
  }
  return os.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"target", r.target},
                   {"input_bits", r.input_bits},
                   {"engine", r.engine},
                   {"certainty", r.certainty}});
  }
  return arr.dump(2) + "\n";
}

ExportSummary export_qasm(const RunConfig& config, const std::string& out_dir) {
  const Problem pb = load_problem(config);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());

  ExportSummary summary;
  json manifest;
  manifest["generator"] = "pqht export-qasm";
  manifest["config"] = config_json(config);
  manifest["qubit_order"] = "vector bit i = pixel line q[i], leftmost first";
  manifest["output_order"] = "expected bit k = detection unit k = c[k], leftmost first";
  json entries = json::array();
  for (std::size_t i = 0; i < pb.table.size(); ++i) {
    const auto& row = pb.table[i];
    const std::string file = "pqht_" + row.input_bits() + ".qasm";
    write_file((fs::path(out_dir) / file).string(), to_openqasm(circuit_for_row(pb, config, i)));
    summary.files.push_back(file);
    entries.push_back({{"file", file}, {"vector", row.input_bits()}, {"expected", row.output_bits()}});
  }
  manifest["entries"] = std::move(entries);
  summary.manifest_path = (fs::path(out_dir) / "manifest.json").string();
  write_file(summary.manifest_path, manifest.dump(2) + "\n");
  return summary;
}

std::vector<TranspileRow> run_transpile_report(const RunConfig& config) {
  const Problem pb = load_problem(config);
  const CouplingMap coupling = load_coupling(config.coupling).value_or(heavy_hex_27());
  std::vector<TranspileRow> rows;
  for (std::size_t i = 0; i < pb.table.size(); ++i) {
    const auto grid =
        grid_from_vector(pb.width, pb.height, pb.table.layout, pb.table[i].input);
    const auto built = build_pqht(grid, pb.patterns, {CoincidenceKind::Maxfinder, config.measure});
    const auto routed = transpile(built.circuit, coupling, config.seed);
    const std::vector<std::vector<std::uint8_t>> vectors{{}};
    const auto eq = verify_equivalence(built.circuit, routed.circuit, routed.mapping, vectors);
    rows.push_back({pb.table[i].input_bits(), routed.report, eq.equivalent, eq.max_tv_distance});
  }
  return rows;
}

std::string transpile_csv(const std::vector<TranspileRow>& rows) {
  std::ostringstream os;
  os << "input_bits,depth_before,depth_after,cx_count,swap_count,total_gates,seed,equivalent\n";
  for (const auto& r : rows) {
    const auto& t = r.report;
    os << r.input_bits << ',' << t.depth_before << ',' << t.depth_after << ',' << t.cx_count << ','
       << t.swap_count << ',' << t.total_gates << ',' << t.seed << ',' << (r.equivalent ? 1 : 0)
       << '\n';
  }
  return os.str();
}

std::string transpile_json(const std::vector<TranspileRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    const auto& t = r.report;
    arr.push_back({{"input_bits", r.input_bits},
                   {"depth_before", t.depth_before},
                   {"depth_after", t.depth_after},
                   {"cx_count", t.cx_count},
                   {"swap_count", t.swap_count},
                   {"total_gates", t.total_gates},
                   {"seed", t.seed},
                   {"equivalent", r.equivalent},
                   {"tv_distance", r.tv_distance}});
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Gadgets

namespace {

constexpr std::size_t kStateVectorGadgetLimit = 16;

/// Output basis state for a basis input, or nullopt if the result is not a
/// single basis state.
std::optional<std::vector<std::uint8_t>> run_basis(const QuantumCircuit& circuit,
                                                   const std::vector<std::uint8_t>& input) {
  if (circuit.num_qubits() > kStateVectorGadgetLimit) return evaluate_reversible(circuit, input);
  QuantumCircuit prepared(circuit.num_qubits(), circuit.num_clbits());
  for (std::size_t q = 0; q < input.size(); ++q) {
    if (input[q]) prepared.x(q);
  }
  prepared.compose(circuit);
  const auto state = run_exact(prepared);
  std::size_t best = 0;
  for (std::size_t i = 1; i < state.dimension(); ++i) {
    if (state.probability(i) > state.probability(best)) best = i;
  }
  if (std::abs(state.probability(best) - 1.0) > 1e-12) return std::nullopt;
  return bits_of(best, circuit.num_qubits());
}

std::uint64_t read_register(const std::vector<std::uint8_t>& bits, std::span<const QubitId> reg) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < reg.size(); ++i) v |= std::uint64_t{bits[reg[i]]} << i;
  return v;
}

void write_register(std::vector<std::uint8_t>& bits, std::span<const QubitId> reg,
                    std::uint64_t v) {
  for (std::size_t i = 0; i < reg.size(); ++i) bits[reg[i]] = (v >> i) & 1U;
}

GadgetCheck check_adder(const GadgetHooks& hooks) {
  AdderLayout l{{0, 1, 2}, {3, 4, 5}, {6}, 7};
  auto circuit = build_adder3(l);
  if (hooks.mutate_adder) hooks.mutate_adder(circuit);
  GadgetCheck chk{"adder3", 0, 0, std::nullopt};
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      std::vector<std::uint8_t> in(circuit.num_qubits(), 0);
      write_register(in, l.a, a);
      write_register(in, l.b, b);
      auto out = run_basis(circuit, in);
      bool ok = out.has_value();
      if (ok) {
        ok = read_register(*out, l.a) == a && read_register(*out, l.b) == (a + b) % 8 &&
             (*out)[l.carry_out] == ((a + b) >= 8 ? 1 : 0) && (*out)[l.carries[0]] == 0;
      }
      ++chk.cases;
      if (ok) {
        ++chk.passed;
      } else if (!chk.counterexample) {
        chk.counterexample = "a=" + std::to_string(a) + " b=" + std::to_string(b);
      }
    }
  }
  return chk;
}

GadgetCheck check_comparator() {
  ComparatorLayout l{{0, 1}, {2, 3}, {4}, 5};
  const auto circuit = build_comparator_lt(l);
  GadgetCheck chk{"comparator_lt2", 0, 0, std::nullopt};
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) {
      std::vector<std::uint8_t> in(circuit.num_qubits(), 0);
      write_register(in, l.a, a);
      write_register(in, l.b, b);
      auto out = run_basis(circuit, in);
      bool ok = out.has_value();
      if (ok) {
        auto expect = in;
        expect[l.result] = a < b ? 1 : 0;
        ok = *out == expect;
      }
      ++chk.cases;
      if (ok) {
        ++chk.passed;
      } else if (!chk.counterexample) {
        chk.counterexample = "A=" + std::to_string(a) + " B=" + std::to_string(b);
      }
    }
  }
  return chk;
}

GadgetCheck check_threshold(std::size_t n, std::size_t threshold) {
  std::vector<QubitId> inputs(n);
  for (std::size_t i = 0; i < n; ++i) inputs[i] = i;
  const auto unit = build_threshold_unit(inputs, threshold);
  GadgetCheck chk{"threshold(" + std::to_string(n) + "," + std::to_string(threshold) + ")", 0, 0,
                  std::nullopt};
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::vector<std::uint8_t> in(unit.circuit.num_qubits(), 0);
    write_register(in, inputs, v);
    auto out = run_basis(unit.circuit, in);
    bool ok = out.has_value();
    if (ok) {
      auto expect = in;
      expect[unit.output] = static_cast<std::size_t>(std::popcount(v)) >= threshold ? 1 : 0;
      ok = *out == expect;
    }
    ++chk.cases;
    if (ok) {
      ++chk.passed;
    } else if (!chk.counterexample) {
      chk.counterexample = format_bits(bits_of(v, n));
    }
  }
  return chk;
}

GadgetCheck check_threshold_vs_maxfinder() {
  const std::vector<QubitId> inputs{0, 1, 2};
  const auto unit = build_threshold_unit(inputs, 3);
  QuantumCircuit maxfinder(5, 0);
  maxfinder.ccx(0, 1, 3).ccx(3, 2, 4);
  GadgetCheck chk{"threshold(3,3)==maxfinder", 0, 0, std::nullopt};
  for (std::uint64_t v = 0; v < 8; ++v) {
    std::vector<std::uint8_t> a(unit.circuit.num_qubits(), 0), b(5, 0);
    write_register(a, inputs, v);
    write_register(b, inputs, v);
    auto ta = run_basis(unit.circuit, a);
    auto tb = run_basis(maxfinder, b);
    const bool ok = ta && tb && (*ta)[unit.output] == (*tb)[4];
    ++chk.cases;
    if (ok) {
      ++chk.passed;
    } else if (!chk.counterexample) {
      chk.counterexample = format_bits(bits_of(v, 3));
    }
  }
  return chk;
}

}  // namespace

bool GadgetReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const GadgetCheck& c) { return c.passed == c.cases; });
}

std::string GadgetReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed == c.cases ? "PASS " : "FAIL ") << c.name << ' ' << c.passed << '/' << c.cases;
    if (c.counterexample) os << " first counterexample: " << *c.counterexample;
    os << '\n';
  }
  return os.str();
}

GadgetReport run_gadget_check(const GadgetHooks& hooks) {
  GadgetReport report;
  report.checks.push_back(check_adder(hooks));
  report.checks.push_back(check_comparator());
  for (std::size_t n = kMinThresholdInputs; n <= kMaxThresholdInputs; ++n) {
    for (std::size_t t = 1; t <= n; ++t) report.checks.push_back(check_threshold(n, t));
  }
  report.checks.push_back(check_threshold_vs_maxfinder());
  return report;
}

}  // namespace pqht::harness
