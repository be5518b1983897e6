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
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqht/circuit.hpp"
#include "pqht/statevector.hpp"

namespace pqht {

/// Raised when a circuit needs more dense amplitudes than allowed.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulatorOptions {
  std::size_t max_qubits = 26;
  /// Measured-bit count up to which sampling uses an inverse CDF over the
  /// marginal distribution; above it each shot draws a full basis index.
  std::size_t marginal_sampling_limit = 20;
};

/// Measured bitstring frequencies. Keys list classical bits in ascending
/// index order, bit with the lowest index leftmost.
struct ShotHistogram {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<ClbitId> clbits;

  std::uint64_t count(const std::string& key) const {
    auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
  }
  /// Most frequent key; ties go to the lexicographically smallest key.
  std::string argmax() const;
  /// Histogram over a subset of its own positions (indices into the key).
  ShotHistogram marginal(std::span<const std::size_t> positions) const;

  friend bool operator==(const ShotHistogram&, const ShotHistogram&) = default;
};

/// Uniform double in [0, 1) from the top 53 bits of one generator draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Throws std::invalid_argument if any gate touches a qubit after it has been
/// measured.
void require_terminal_measurements(const QuantumCircuit& circuit);

/// Final state of `circuit` applied to |0...0>. Measure instructions are
/// ignored; they must be terminal.
StateVector<double> run_exact(const QuantumCircuit& circuit, const SimulatorOptions& options = {});

/// Marginal distribution over `qubits` as a dense vector: bit i of the index
/// is qubits[i].
std::vector<double> marginal_distribution(const StateVector<double>& state,
                                          std::span<const QubitId> qubits);

/// Marginal over `qubits` keyed by bitstring (qubits[0] leftmost). Only
/// non-zero probabilities are listed.
std::map<std::string, double> probabilities(const StateVector<double>& state,
                                            std::span<const QubitId> qubits);

/// Qubits read by the circuit's measurements, ordered by classical bit.
struct MeasuredRegister {
  std::vector<QubitId> qubits;
  std::vector<ClbitId> clbits;
};
MeasuredRegister measured_register(const QuantumCircuit& circuit);

/// Exact distribution of the measured classical bits, keyed like ShotHistogram.
std::map<std::string, double> output_distribution(const QuantumCircuit& circuit,
                                                  const SimulatorOptions& options = {});

/// Draws `shots` terminal-measurement samples with std::mt19937_64(seed).
/// Identical (circuit, shots, seed) give identical histograms.
ShotHistogram sample_shots(const QuantumCircuit& circuit, std::uint64_t shots, std::uint64_t seed,
                           const SimulatorOptions& options = {});

/// Samples `shots` outcomes from a dense distribution (bit i of the index is
/// key position i) using one generator for all shots.
ShotHistogram sample_distribution(std::span<const double> distribution, std::size_t width,
                                  std::uint64_t shots, std::uint64_t seed);

/// Classical evaluation of a circuit made only of X, CX, CCX and SWAP on a
/// computational-basis input (bit i = qubit i). Throws on any other gate.
std::vector<std::uint8_t> evaluate_reversible(const QuantumCircuit& circuit,
                                              std::span<const std::uint8_t> input);

/// True if the circuit contains only X, CX, CCX, SWAP (and Measure).
bool is_reversible_boolean(const QuantumCircuit& circuit);

}  // namespace pqht
