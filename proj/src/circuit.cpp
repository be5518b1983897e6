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

#include "pqht/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pqht {

std::string format_bits(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

std::vector<std::uint8_t> parse_bits(const std::string& text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("bitstring '" + text + "' contains a character other than 0/1");
    }
    bits.push_back(ch == '1');
  }
  return bits;
}

std::vector<std::uint8_t> bits_of(std::uint64_t value, std::size_t width) {
  std::vector<std::uint8_t> bits(width);
  for (std::size_t i = 0; i < width; ++i) bits[i] = (value >> i) & 1U;
  return bits;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::SX: return "sx";
    case GateKind::RZ: return "rz";
    case GateKind::CX: return "cx";
    case GateKind::CCX: return "ccx";
    case GateKind::SWAP: return "swap";
    case GateKind::Measure: return "measure";
  }
  return "?";
}

bool operator==(const Gate& a, const Gate& b) {
  if (a.kind != b.kind) return false;
  if (!std::equal(a.operands().begin(), a.operands().end(), b.operands().begin())) return false;
  if (a.kind == GateKind::RZ) return a.angle == b.angle;
  if (a.kind == GateKind::Measure) return a.clbit == b.clbit;
  return true;
}

namespace {

std::string format_angle(double theta) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", theta);
  return buf;
}

}  // namespace

std::string to_string(const Gate& gate) {
  std::ostringstream os;
  os << gate_name(gate.kind);
  if (gate.kind == GateKind::RZ) os << '(' << format_angle(gate.angle) << ')';
  for (std::size_t i = 0; i < gate.size(); ++i) {
    os << (i == 0 ? " " : ",") << "q[" << gate.qubits[i] << ']';
  }
  if (gate.kind == GateKind::Measure) os << " -> c[" << gate.clbit << ']';
  return os.str();
}

QuantumCircuit::QuantumCircuit(std::size_t num_qubits, std::size_t num_clbits)
    : num_qubits_(num_qubits), num_clbits_(num_clbits) {
  if (num_qubits == 0) throw std::invalid_argument("a circuit needs at least one qubit");
}

void QuantumCircuit::validate(const Gate& gate, std::size_t position) const {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("instruction " + std::to_string(position) + " (" +
                                to_string(gate) + "): " + what);
  };
  auto ops = gate.operands();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] >= num_qubits_) {
      fail("qubit " + std::to_string(ops[i]) + " out of range for " +
           std::to_string(num_qubits_) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ops[i] == ops[j]) fail("duplicate operand q[" + std::to_string(ops[i]) + "]");
    }
  }
  if (gate.kind == GateKind::RZ && !std::isfinite(gate.angle)) fail("non-finite angle");
  if (gate.kind == GateKind::Measure) {
    if (gate.clbit >= num_clbits_) {
      fail("classical bit " + std::to_string(gate.clbit) + " out of range for " +
           std::to_string(num_clbits_) + " bits");
    }
    for (const auto& g : gates_) {
      if (g.kind == GateKind::Measure && g.clbit == gate.clbit) {
        fail("classical bit " + std::to_string(gate.clbit) + " is already a measurement target");
      }
    }
  }
}

QuantumCircuit& QuantumCircuit::append(const Gate& gate) {
  validate(gate, gates_.size());
  gates_.push_back(gate);
  return *this;
}

QuantumCircuit& QuantumCircuit::compose(const QuantumCircuit& fragment) {
  if (fragment.num_qubits() > num_qubits_ || fragment.num_clbits() > num_clbits_) {
    throw std::invalid_argument("fragment register does not fit into the target circuit");
  }
  for (const auto& g : fragment) append(g);
  return *this;
}

void QuantumCircuit::insert(std::size_t pos, std::span<const Gate> gates) {
  if (pos > gates_.size()) throw std::out_of_range("insert position past end of circuit");
  for (std::size_t i = 0; i < gates.size(); ++i) validate(gates[i], pos + i);
  gates_.insert(gates_.begin() + static_cast<std::ptrdiff_t>(pos), gates.begin(), gates.end());
}

void QuantumCircuit::erase(std::size_t pos) {
  if (pos >= gates_.size()) throw std::out_of_range("erase position past end of circuit");
  gates_.erase(gates_.begin() + static_cast<std::ptrdiff_t>(pos));
}

std::vector<std::pair<QubitId, ClbitId>> QuantumCircuit::measurements() const {
  std::vector<std::pair<QubitId, ClbitId>> out;
  for (const auto& g : gates_) {
    if (g.kind == GateKind::Measure) out.emplace_back(g.qubits[0], g.clbit);
  }
  return out;
}

QuantumCircuit inverse(const QuantumCircuit& circuit) {
  QuantumCircuit out(circuit.num_qubits(), circuit.num_clbits());
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::SX:
      case GateKind::Measure:
        throw std::invalid_argument("cannot invert " + to_string(g));
      case GateKind::RZ:
        g.angle = -g.angle;
        break;
      default:
        break;
    }
    out.append(g);
  }
  return out;
}

CircuitMetrics metrics(const QuantumCircuit& circuit) {
  CircuitMetrics m;
  std::vector<std::size_t> qfront(circuit.num_qubits(), 0);
  std::vector<std::size_t> cfront(circuit.num_clbits(), 0);
  for (const auto& g : circuit) {
    std::size_t layer = 0;
    for (auto q : g.operands()) layer = std::max(layer, qfront[q]);
    if (g.kind == GateKind::Measure) layer = std::max(layer, cfront[g.clbit]);
    ++layer;
    for (auto q : g.operands()) qfront[q] = layer;
    if (g.kind == GateKind::Measure) cfront[g.clbit] = layer;
    m.depth = std::max(m.depth, layer);
    ++m.gate_counts[g.kind];
    if (g.size() >= 2) ++m.two_qubit_count;
  }
  return m;
}

std::string to_openqasm(const QuantumCircuit& circuit) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n"
     << "include \"qelib1.inc\";\n"
     << "qreg q[" << circuit.num_qubits() << "];\n";
  // Zero-size registers are rejected by most consumers.
  if (circuit.num_clbits() > 0) os << "creg c[" << circuit.num_clbits() << "];\n";
  for (const auto& g : circuit) os << to_string(g) << ";\n";
  return os.str();
}

std::pair<QuantumCircuit, std::vector<QubitId>> compact_qubits(const QuantumCircuit& circuit) {
  std::vector<bool> used(circuit.num_qubits(), false);
  for (const auto& g : circuit) {
    for (auto q : g.operands()) used[q] = true;
  }
  std::vector<QubitId> old_of_new;
  std::vector<QubitId> new_of_old(circuit.num_qubits(), 0);
  for (QubitId q = 0; q < circuit.num_qubits(); ++q) {
    if (used[q]) {
      new_of_old[q] = old_of_new.size();
      old_of_new.push_back(q);
    }
  }
  if (old_of_new.empty()) old_of_new.push_back(0);
  QuantumCircuit out(old_of_new.size(), circuit.num_clbits());
  for (Gate g : circuit) {
    for (std::size_t i = 0; i < g.size(); ++i) g.qubits[i] = new_of_old[g.qubits[i]];
    out.append(g);
  }
  return {std::move(out), std::move(old_of_new)};
}

}  // namespace pqht
