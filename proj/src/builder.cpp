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

#include "pqht/builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pqht/gadgets.hpp"

namespace pqht {

PixelGrid::PixelGrid(std::size_t width, std::size_t height)
    : PixelGrid(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

PixelGrid::PixelGrid(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width == 0 || height == 0) throw std::invalid_argument("grid dimensions must be positive");
  if (bits_.size() != width * height) {
    throw std::invalid_argument("grid has " + std::to_string(bits_.size()) + " bits for " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

std::size_t PixelGrid::index(Pixel p) const {
  if (!contains(p)) {
    throw std::out_of_range("pixel (" + std::to_string(p.col) + "," + std::to_string(p.row) +
                            ") outside grid");
  }
  return p.row * width_ + p.col;
}

bool PixelGrid::at(Pixel p) const { return bits_[index(p)] != 0; }
void PixelGrid::set(Pixel p, bool value) { bits_[index(p)] = value ? 1 : 0; }

double phase_of_pixel(std::size_t col, bool set) {
  return set ? -(4.0 * static_cast<double>(col) + 1.0) * kPi : 0.0;
}

std::vector<PatternSpec> default_3x3_patterns() {
  return {
      {"B", 90.0, {{0, 0}, {0, 1}, {0, 2}}},
      {"C", 75.0, {{0, 0}, {0, 1}, {1, 2}}},
      {"D", 60.0, {{0, 0}, {1, 1}, {1, 2}}},
      {"A", 45.0, {{0, 0}, {1, 1}, {2, 2}}},
  };
}

QubitId PQHTLayout::qubit_of(Pixel p) const {
  for (const auto& [px, q] : input_qubits) {
    if (px == p) return q;
  }
  throw std::out_of_range("pixel (" + std::to_string(p.col) + "," + std::to_string(p.row) +
                          ") has no qubit line");
}

std::vector<QubitId> PQHTLayout::outputs() const {
  std::vector<QubitId> out;
  for (const auto& u : units) out.push_back(u.output);
  return out;
}

bool PQHTLayout::is_carry(QubitId q) const {
  for (const auto& u : units) {
    if (std::find(u.carries.begin(), u.carries.end(), q) != u.carries.end()) return true;
  }
  return false;
}

bool PQHTLayout::is_output(QubitId q) const {
  for (const auto& u : units) {
    if (u.output == q) return true;
  }
  return false;
}

void validate_patterns(std::size_t width, std::size_t height,
                       std::span<const PatternSpec> patterns) {
  if (patterns.empty()) throw std::invalid_argument("at least one pattern is required");
  for (const auto& p : patterns) {
    if (p.pixels.size() < 2) {
      throw std::invalid_argument("pattern '" + p.name + "' needs at least two pixels");
    }
    std::set<Pixel> seen;
    for (const auto& px : p.pixels) {
      if (px.col >= width || px.row >= height) {
        throw std::invalid_argument("pattern '" + p.name + "' references pixel (" +
                                    std::to_string(px.col) + "," + std::to_string(px.row) +
                                    ") outside the " + std::to_string(width) + "x" +
                                    std::to_string(height) + " grid");
      }
      if (!seen.insert(px).second) {
        throw std::invalid_argument("pattern '" + p.name + "' lists a pixel twice");
      }
    }
  }
}

PQHTLayout assign_layout(std::size_t width, std::size_t height,
                         std::span<const PatternSpec> patterns, CoincidenceKind kind) {
  validate_patterns(width, height, patterns);
  PQHTLayout layout;
  std::map<Pixel, QubitId> line;
  for (const auto& p : patterns) {
    for (const auto& px : p.pixels) {
      if (line.emplace(px, layout.input_qubits.size()).second) {
        layout.input_qubits.emplace_back(px, line[px]);
      }
    }
  }
  QubitId next = layout.input_qubits.size();
  std::size_t max_arity = 0;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    DetectionUnit u;
    u.pattern = k;
    for (const auto& px : patterns[k].pixels) u.inputs.push_back(line.at(px));
    if (kind == CoincidenceKind::Maxfinder) {
      for (std::size_t c = 0; c + 2 < u.inputs.size(); ++c) u.carries.push_back(next++);
    }
    u.output = next++;
    max_arity = std::max(max_arity, u.inputs.size());
    layout.units.push_back(std::move(u));
  }
  if (kind == CoincidenceKind::Threshold) {
    if (max_arity > kMaxThresholdInputs) {
      throw std::invalid_argument("threshold units support at most 7 pixels per pattern");
    }
    for (std::size_t i = 0; i < threshold_workspace_size(max_arity); ++i) {
      layout.workspace.push_back(next++);
    }
  }
  layout.total_qubits = next;
  return layout;
}

namespace {

void append_maxfinder(QuantumCircuit& qc, const DetectionUnit& u) {
  const auto& in = u.inputs;
  if (in.size() == 2) {
    qc.ccx(in[0], in[1], u.output);
    return;
  }
  qc.ccx(in[0], in[1], u.carries[0]);
  for (std::size_t j = 2; j + 1 < in.size(); ++j) qc.ccx(u.carries[j - 2], in[j], u.carries[j - 1]);
  qc.ccx(u.carries.back(), in.back(), u.output);
}

}  // namespace

PQHTCircuit build_pqht(const PixelGrid& grid, std::span<const PatternSpec> patterns,
                       const BuildOptions& options) {
  auto layout = assign_layout(grid.width(), grid.height(), patterns, options.coincidence);
  const std::size_t n_in = layout.num_inputs();
  const std::size_t n_clbits =
      options.measure == MeasureMode::Outputs ? layout.units.size() : layout.total_qubits;
  QuantumCircuit qc(layout.total_qubits, n_clbits);

  for (std::size_t k = 0; k < layout.units.size(); ++k) {
    for (QubitId q = 0; q < n_in; ++q) qc.h(q);
    for (const auto& [px, q] : layout.input_qubits) {
      const bool set = grid.at(px);
      if (k == 0) {
        qc.rz(q, phase_of_pixel(px.col, set));
      } else if (set) {
        qc.rz(q, -4.0 * kPi);
      }
    }
    for (QubitId q = 0; q < n_in; ++q) qc.h(q);

    const auto& unit = layout.units[k];
    if (options.coincidence == CoincidenceKind::Maxfinder) {
      append_maxfinder(qc, unit);
    } else {
      auto tl = threshold_layout(unit.inputs, layout.workspace, unit.output);
      qc.compose(build_threshold(tl, unit.inputs.size(), layout.total_qubits));
    }
  }

  ClbitId c = 0;
  for (const auto& u : layout.units) qc.measure(u.output, c++);
  if (options.measure == MeasureMode::All) {
    for (QubitId q = 0; q < layout.total_qubits; ++q) {
      if (!layout.is_output(q)) qc.measure(q, c++);
    }
  }
  return {std::move(qc), std::move(layout)};
}

PixelGrid grid_from_vector(std::size_t width, std::size_t height, const PQHTLayout& layout,
                           std::span<const std::uint8_t> vector) {
  if (vector.size() != layout.num_inputs()) {
    throw std::invalid_argument("input vector has " + std::to_string(vector.size()) +
                                " bits for " + std::to_string(layout.num_inputs()) +
                                " pixel lines");
  }
  PixelGrid grid(width, height);
  for (const auto& [px, q] : layout.input_qubits) grid.set(px, vector[q] != 0);
  return grid;
}

std::vector<std::uint8_t> vector_from_grid(const PixelGrid& grid, const PQHTLayout& layout) {
  std::vector<std::uint8_t> v(layout.num_inputs());
  for (const auto& [px, q] : layout.input_qubits) v[q] = grid.at(px) ? 1 : 0;
  return v;
}

namespace {

// Distance of x from the nearest integer, relative to a unit step.
bool near_integer(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) <= tol; }

bool is_pixel_phase(double theta) {
  if (theta == 0.0) return true;
  const double n = (-theta / kPi - 1.0) / 4.0;
  return n > -1e-9 && near_integer(n);
}

bool is_shift_phase(double theta) { return near_integer(theta / (4.0 * kPi)); }

std::string fmt_pi(double theta) {
  std::ostringstream os;
  os << theta / kPi << "pi";
  return os.str();
}

}  // namespace

DesignRuleReport validate_design_rules(const QuantumCircuit& circuit, const PQHTLayout& layout) {
  DesignRuleReport report;
  auto flag = [&](const char* rule, std::size_t pos, std::string what) {
    report.violations.push_back({rule, pos, std::move(what)});
  };
  auto is_workspace = [&](QubitId q) {
    return std::find(layout.workspace.begin(), layout.workspace.end(), q) != layout.workspace.end();
  };

  std::size_t first_block_end = circuit.size();
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (circuit[i].size() >= 2) {
      first_block_end = i;
      break;
    }
  }

  // Previous and next gate (other than RZ) touching each qubit.
  auto neighbour = [&](std::size_t pos, QubitId q, int dir) -> const Gate* {
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(pos) + dir;
         i >= 0 && i < static_cast<std::ptrdiff_t>(circuit.size()); i += dir) {
      const Gate& g = circuit[static_cast<std::size_t>(i)];
      auto ops = g.operands();
      if (std::find(ops.begin(), ops.end(), q) == ops.end()) continue;
      if (g.kind == GateKind::RZ) continue;
      return &g;
    }
    return nullptr;
  };

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    if (g.kind == GateKind::RZ) {
      const QubitId q = g.qubits[0];
      if (i < first_block_end) {
        if (!is_pixel_phase(g.angle)) {
          flag("R1", i, "pixel rotation " + fmt_pi(g.angle) + " on q[" + std::to_string(q) +
                            "] is not an odd -(4n+1)pi position");
        }
      } else if (!is_shift_phase(g.angle)) {
        flag("R2", i, "shift rotation " + fmt_pi(g.angle) + " on q[" + std::to_string(q) +
                          "] is not a multiple of 4pi");
      }
      if (!layout.is_input(q)) {
        flag("R3", i, "rotation on q[" + std::to_string(q) + "], which is not a pixel line");
      } else {
        const Gate* before = neighbour(i, q, -1);
        const Gate* after = neighbour(i, q, +1);
        if (!before || before->kind != GateKind::H || !after || after->kind != GateKind::H) {
          flag("R3", i, "rotation on q[" + std::to_string(q) + "] is not enclosed by H gates");
        }
      }
    } else if (g.size() >= 2) {
      auto ops = g.operands();
      if (std::any_of(ops.begin(), ops.end(), is_workspace)) continue;
      const bool swap = g.kind == GateKind::SWAP;
      for (std::size_t k = 0; k + 1 < ops.size() && !swap; ++k) {
        if (!layout.is_input(ops[k]) && !layout.is_carry(ops[k])) {
          flag("R4", i, "coincidence gate reads q[" + std::to_string(ops[k]) +
                            "], which is neither a pixel nor a carry line");
        }
      }
      for (std::size_t k = swap ? 0 : ops.size() - 1; k < ops.size(); ++k) {
        if (!layout.is_carry(ops[k]) && !layout.is_output(ops[k])) {
          flag("R4", i, "coincidence gate writes q[" + std::to_string(ops[k]) +
                            "], which is neither a carry nor an output line");
        }
      }
    }
  }
  return report;
}

namespace {

std::string strip_comment(std::string line) {
  if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
  auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

}  // namespace

PixelGrid parse_grid(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    if (!rows.empty() && line.size() != rows.front().size()) {
      throw std::invalid_argument("grid rows have different lengths");
    }
    rows.push_back(line);
  }
  if (rows.empty()) throw std::invalid_argument("grid is empty");
  const std::size_t w = rows.front().size();
  const std::size_t h = rows.size();
  PixelGrid grid(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const char ch = rows[r][c];
      if (ch != '0' && ch != '1') {
        throw std::invalid_argument(std::string("grid contains '") + ch + "'");
      }
      grid.set({w - 1 - c, h - 1 - r}, ch == '1');
    }
  }
  return grid;
}

std::vector<PatternSpec> parse_patterns(const std::string& text) {
  static const std::regex head(R"(^(\S+)\s+([-+0-9.eE]+)\s*(.*)$)");
  static const std::regex pair(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::vector<PatternSpec> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (line.empty()) continue;
    std::smatch m;
    if (!std::regex_match(line, m, head)) {
      throw std::invalid_argument("pattern line " + std::to_string(lineno) +
                                  ": expected '<name> <angle> (col,row) ...'");
    }
    PatternSpec p;
    p.name = m[1];
    try {
      p.angle_degrees = std::stod(m[2]);
    } catch (const std::exception&) {
      throw std::invalid_argument("pattern line " + std::to_string(lineno) + ": bad angle");
    }
    const std::string rest = m[3];
    std::string leftover = std::regex_replace(rest, pair, "");
    if (leftover.find_first_not_of(" \t") != std::string::npos) {
      throw std::invalid_argument("pattern line " + std::to_string(lineno) +
                                  ": malformed pixel list");
    }
    for (std::sregex_iterator it(rest.begin(), rest.end(), pair), end; it != end; ++it) {
      p.pixels.push_back({std::stoul((*it)[1]), std::stoul((*it)[2])});
    }
    out.push_back(std::move(p));
  }
  if (out.empty()) throw std::invalid_argument("no patterns defined");
  return out;
}

std::string format_grid(const PixelGrid& grid) {
  std::string out;
  for (std::size_t r = grid.height(); r-- > 0;) {
    for (std::size_t c = grid.width(); c-- > 0;) out.push_back(grid.at({c, r}) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::string format_patterns(std::span<const PatternSpec> patterns) {
  std::ostringstream os;
  for (const auto& p : patterns) {
    os << p.name << ' ' << p.angle_degrees;
    for (const auto& px : p.pixels) os << " (" << px.col << ',' << px.row << ')';
    os << '\n';
  }
  return os.str();
}

}  // namespace pqht
