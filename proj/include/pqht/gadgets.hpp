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

// Reversible arithmetic for scalable coincidence detection: a ripple-carry
// adder, an A < B comparator and a popcount-threshold unit built from them.
// All fragments use only X, CX and CCX and leave their ancillas in |0>.

#include <cstddef>
#include <span>
#include <vector>

#include "pqht/circuit.hpp"

namespace pqht {

/// b <- a + b (mod 2^w), carry_out ^= overflow. `a` and the single carry
/// ancilla are restored. Bit 0 of each register is the least significant.
struct AdderLayout {
  std::vector<QubitId> a;
  std::vector<QubitId> b;
  std::vector<QubitId> carries;  // one ancilla, must start in |0>
  QubitId carry_out = 0;
};

/// result ^= (A < B) with A, B unsigned and bit 0 least significant.
struct ComparatorLayout {
  std::vector<QubitId> a;
  std::vector<QubitId> b;
  std::vector<QubitId> ancillas;  // comparator_ancilla_count(width), start in |0>
  QubitId result = 0;
};

/// Majority/unmajority ripple-carry adder of any width >= 1.
QuantumCircuit build_adder(const AdderLayout& layout);
/// The 3-bit instance; throws std::invalid_argument for other widths.
QuantumCircuit build_adder3(const AdderLayout& layout);

std::size_t comparator_ancilla_count(std::size_t width);
/// Minterm comparator of any width >= 1, evaluated most significant bit first.
QuantumCircuit build_comparator(const ComparatorLayout& layout);
/// The 2-bit instance; throws std::invalid_argument for other widths.
QuantumCircuit build_comparator_lt(const ComparatorLayout& layout);

/// Qubits of a popcount-threshold unit over n inputs, w = bit_width(n).
struct ThresholdLayout {
  std::vector<QubitId> inputs;
  std::vector<QubitId> count;      // w bits, popcount accumulator
  std::vector<QubitId> threshold;  // w bits, classically initialised
  std::vector<QubitId> zero_ext;   // w-1 bits, high bits of the adder addend
  QubitId adder_carry = 0;
  QubitId adder_carry_out = 0;
  std::vector<QubitId> comparator_ancillas;
  QubitId output = 0;
};

inline constexpr std::size_t kMinThresholdInputs = 2;
inline constexpr std::size_t kMaxThresholdInputs = 7;

/// Ancilla lines (excluding inputs and output) needed for n inputs.
std::size_t threshold_workspace_size(std::size_t num_inputs);

/// Lays the workspace out on `workspace` (at least threshold_workspace_size
/// lines).
ThresholdLayout threshold_layout(std::span<const QubitId> inputs,
                                 std::span<const QubitId> workspace, QubitId output);

/// output ^= (popcount(inputs) >= threshold); all workspace lines restored.
QuantumCircuit build_threshold(const ThresholdLayout& layout, std::size_t threshold,
                               std::size_t num_qubits);

struct ThresholdUnit {
  QuantumCircuit circuit;
  QubitId output = 0;
  ThresholdLayout layout;
};

/// Allocates the workspace directly after the highest input line and the
/// output after the workspace.
ThresholdUnit build_threshold_unit(std::span<const QubitId> inputs, std::size_t threshold);

}  // namespace pqht
