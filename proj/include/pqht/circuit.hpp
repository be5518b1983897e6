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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pqht {

/// Index of a qubit line, dense from 0.
using QubitId = std::size_t;
/// Index of a classical bit.
using ClbitId = std::size_t;

inline constexpr double kPi = std::numbers::pi;

/// Bit-order convention used by every module:
///
///  * State-vector amplitudes are little-endian: qubit 0 is the least
///    significant bit of the basis index.
///  * Bitstrings (histogram keys, truth-table rows, manifest entries) are
///    printed in *listed* order: the first listed qubit or classical bit 0 is
///    the leftmost character. A PQHT output channel "1000" therefore means the
///    first coincidence unit fired, and the input vector "111000" means
///    q0, q1 and q2 are set.
///
/// `format_bits` and `parse_bits` are the only places that know this.
std::string format_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> parse_bits(const std::string& text);
/// Bits of `value` for positions 0..width-1 (position 0 = least significant).
std::vector<std::uint8_t> bits_of(std::uint64_t value, std::size_t width);

enum class GateKind : std::uint8_t { H, X, SX, RZ, CX, CCX, SWAP, Measure };

/// Number of qubit operands for a gate kind.
constexpr std::size_t arity(GateKind kind) {
  switch (kind) {
    case GateKind::CX:
    case GateKind::SWAP:
      return 2;
    case GateKind::CCX:
      return 3;
    default:
      return 1;
  }
}

/// Lower-case OpenQASM 2.0 mnemonic.
std::string_view gate_name(GateKind kind);

/// One IR instruction. Controls precede the target for CX and CCX.
struct Gate {
  GateKind kind = GateKind::H;
  std::array<QubitId, 3> qubits{};
  double angle = 0.0;  // RZ only, radians
  ClbitId clbit = 0;   // Measure only

  std::size_t size() const { return arity(kind); }
  std::span<const QubitId> operands() const { return {qubits.data(), size()}; }
  QubitId target() const { return qubits[size() - 1]; }

  static Gate h(QubitId q) { return {GateKind::H, {q, 0, 0}}; }
  static Gate x(QubitId q) { return {GateKind::X, {q, 0, 0}}; }
  static Gate sx(QubitId q) { return {GateKind::SX, {q, 0, 0}}; }
  static Gate rz(QubitId q, double theta) { return {GateKind::RZ, {q, 0, 0}, theta}; }
  static Gate cx(QubitId control, QubitId target) {
    return {GateKind::CX, {control, target, 0}};
  }
  static Gate ccx(QubitId c0, QubitId c1, QubitId target) {
    return {GateKind::CCX, {c0, c1, target}};
  }
  static Gate swap(QubitId a, QubitId b) { return {GateKind::SWAP, {a, b, 0}}; }
  static Gate measure(QubitId q, ClbitId c) { return {GateKind::Measure, {q, 0, 0}, 0.0, c}; }

  friend bool operator==(const Gate& a, const Gate& b);
};

std::string to_string(const Gate& gate);

/// Ordered gate list over a fixed qubit / classical-bit register.
///
/// Every appended gate is validated against the register sizes, so a
/// constructed circuit is always well formed. Append order is emission order
/// and simulation order.
class QuantumCircuit {
 public:
  /// Throws std::invalid_argument for zero qubits.
  QuantumCircuit(std::size_t num_qubits, std::size_t num_clbits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_clbits() const { return num_clbits_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }
  const std::vector<Gate>& gates() const { return gates_; }
  auto begin() const { return gates_.begin(); }
  auto end() const { return gates_.end(); }

  /// Validates and appends. Throws std::invalid_argument naming the position
  /// the gate would have occupied.
  QuantumCircuit& append(const Gate& gate);

  QuantumCircuit& h(QubitId q) { return append(Gate::h(q)); }
  QuantumCircuit& x(QubitId q) { return append(Gate::x(q)); }
  QuantumCircuit& sx(QubitId q) { return append(Gate::sx(q)); }
  QuantumCircuit& rz(QubitId q, double theta) { return append(Gate::rz(q, theta)); }
  QuantumCircuit& cx(QubitId c, QubitId t) { return append(Gate::cx(c, t)); }
  QuantumCircuit& ccx(QubitId c0, QubitId c1, QubitId t) { return append(Gate::ccx(c0, c1, t)); }
  QuantumCircuit& swap(QubitId a, QubitId b) { return append(Gate::swap(a, b)); }
  QuantumCircuit& measure(QubitId q, ClbitId c) { return append(Gate::measure(q, c)); }

  /// Appends every gate of `fragment`, which must fit inside this register.
  QuantumCircuit& compose(const QuantumCircuit& fragment);

  /// Inserts before position `pos` (pos == size() appends).
  void insert(std::size_t pos, std::span<const Gate> gates);
  /// Removes the gate at `pos`. Intended for mutation tests.
  void erase(std::size_t pos);

  /// (qubit, clbit) pairs of all Measure instructions in order.
  std::vector<std::pair<QubitId, ClbitId>> measurements() const;

  friend bool operator==(const QuantumCircuit& a, const QuantumCircuit& b) = default;

 private:
  void validate(const Gate& gate, std::size_t position) const;

  std::size_t num_qubits_;
  std::size_t num_clbits_;
  std::vector<Gate> gates_;
};

/// Inverse of a circuit built from self-inverse gates and RZ.
/// Throws std::invalid_argument on SX or Measure.
QuantumCircuit inverse(const QuantumCircuit& circuit);

struct CircuitMetrics {
  std::size_t depth = 0;
  std::map<GateKind, std::size_t> gate_counts;
  std::size_t two_qubit_count = 0;  // gates with two or more qubit operands

  std::size_t count(GateKind kind) const {
    auto it = gate_counts.find(kind);
    return it == gate_counts.end() ? 0 : it->second;
  }
  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

/// Depth by per-qubit front tracking (a measurement also occupies its
/// classical bit). Every gate counts as one layer.
CircuitMetrics metrics(const QuantumCircuit& circuit);

/// OpenQASM 2.0 text with registers `q` and `c`. Angles use 17 significant
/// digits so that the text round-trips the stored double exactly.
std::string to_openqasm(const QuantumCircuit& circuit);

/// Drops qubits that no instruction touches. Returns the compacted circuit
/// and, for every new index, the original qubit it came from.
std::pair<QuantumCircuit, std::vector<QubitId>> compact_qubits(const QuantumCircuit& circuit);

}  // namespace pqht
