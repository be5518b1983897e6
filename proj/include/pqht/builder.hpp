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

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqht/circuit.hpp"

namespace pqht {

/// Position of a pixel. Column 0 is the rightmost image column, row 0 the
/// lowest row.
struct Pixel {
  std::size_t col = 0;
  std::size_t row = 0;
  friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// Binary image, stored row-major.
class PixelGrid {
 public:
  PixelGrid(std::size_t width, std::size_t height);
  PixelGrid(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  bool contains(Pixel p) const { return p.col < width_ && p.row < height_; }
  bool at(Pixel p) const;
  void set(Pixel p, bool value);
  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::size_t index(Pixel p) const;

  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bits_;
};

/// Named pixel set defining one Hough feature.
struct PatternSpec {
  std::string name;
  double angle_degrees = 0.0;
  std::vector<Pixel> pixels;
};

/// Rotation-space position of a pixel: -(4 col + 1) pi if set, else 0.
double phase_of_pixel(std::size_t col, bool set);

/// The four straight-line features of the 3x3 grid, in detection-unit order
/// B (90 deg), C (75 deg), D (60 deg), A (45 deg).
std::vector<PatternSpec> default_3x3_patterns();

/// How a detection unit combines its pixel lines.
enum class CoincidenceKind {
  Maxfinder,  // CCX cascade with carry lines
  Threshold,  // popcount + comparator with threshold = pattern size
};

struct DetectionUnit {
  std::size_t pattern = 0;  // index into the pattern list
  std::vector<QubitId> inputs;
  std::vector<QubitId> carries;
  QubitId output = 0;
};

struct PQHTLayout {
  std::vector<std::pair<Pixel, QubitId>> input_qubits;  // in qubit order
  std::vector<DetectionUnit> units;
  std::vector<QubitId> workspace;  // shared ancillas of threshold units
  std::size_t total_qubits = 0;

  std::size_t num_inputs() const { return input_qubits.size(); }
  /// Qubit of a pixel, or throws std::out_of_range.
  QubitId qubit_of(Pixel p) const;
  std::vector<QubitId> outputs() const;
  bool is_input(QubitId q) const { return q < input_qubits.size(); }
  bool is_carry(QubitId q) const;
  bool is_output(QubitId q) const;
};

/// Throws std::invalid_argument on patterns with fewer than two pixels or
/// with pixels outside the grid.
void validate_patterns(std::size_t width, std::size_t height,
                       std::span<const PatternSpec> patterns);

/// Input lines in order of first appearance across the pattern list, then
/// k-2 carries and one output per unit in unit order.
PQHTLayout assign_layout(std::size_t width, std::size_t height,
                         std::span<const PatternSpec> patterns,
                         CoincidenceKind kind = CoincidenceKind::Maxfinder);

enum class MeasureMode {
  Outputs,  // one classical bit per unit, in unit order
  All,      // outputs first, then every other qubit in index order
};

struct BuildOptions {
  CoincidenceKind coincidence = CoincidenceKind::Maxfinder;
  MeasureMode measure = MeasureMode::Outputs;
};

struct PQHTCircuit {
  QuantumCircuit circuit;
  PQHTLayout layout;
};

/// Builds the rotation blocks and detection units for one image. Pixel
/// values are baked into the first rotation block.
PQHTCircuit build_pqht(const PixelGrid& grid, std::span<const PatternSpec> patterns,
                       const BuildOptions& options = {});

/// Grid whose used pixels take the bits of `vector` (bit i = input qubit i).
PixelGrid grid_from_vector(std::size_t width, std::size_t height, const PQHTLayout& layout,
                           std::span<const std::uint8_t> vector);

/// Input vector of a grid under a layout (bit i = input qubit i).
std::vector<std::uint8_t> vector_from_grid(const PixelGrid& grid, const PQHTLayout& layout);

struct RuleViolation {
  std::string rule;  // R1..R4
  std::size_t position = 0;
  std::string description;
};

struct DesignRuleReport {
  std::vector<RuleViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Boolean rotation-space design rules:
///  R1  first-block RZ angles are 0 or -(4n+1) pi, n >= 0
///  R2  later RZ angles are multiples of 4 pi
///  R3  every RZ sits on an input line between two H gates on that line
///  R4  multi-qubit gates read input/carry lines and write carry/output lines
/// The first block ends at the first multi-qubit gate.
DesignRuleReport validate_design_rules(const QuantumCircuit& circuit, const PQHTLayout& layout);

/// Plain-text grid/pattern configuration.
///
/// Grid files hold rows of '0'/'1' characters, top row first, leftmost
/// character = leftmost image column. Blank lines and '#' comments are
/// skipped. Pattern files hold one pattern per line:
///
///     <name> <angle-degrees> (col,row) (col,row) ...
PixelGrid parse_grid(const std::string& text);
std::vector<PatternSpec> parse_patterns(const std::string& text);
std::string format_grid(const PixelGrid& grid);
std::string format_patterns(std::span<const PatternSpec> patterns);

}  // namespace pqht
