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

// Monte-Carlo Pauli trajectories with asymmetric readout error.

#include <cstdint>
#include <string>

#include "pqht/circuit.hpp"
#include "pqht/simulator.hpp"

namespace pqht {

/// Symmetric depolarising strength per gate plus readout flip rates.
struct NoiseParams {
  double p1 = 0.0;   // after each single-qubit gate
  double p2 = 0.0;   // after each two- or three-qubit gate, per operand
  double r01 = 0.0;  // readout 0 -> 1
  double r10 = 0.0;  // readout 1 -> 0

  bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && r01 == 0.0 && r10 == 0.0; }
  /// Throws std::invalid_argument unless every field is in [0, 1].
  void validate() const;
};

struct NoiseOptions {
  SimulatorOptions simulator;
  /// Memory for cached noiseless prefix states, in bytes.
  std::size_t checkpoint_budget = std::size_t{256} << 20;
  /// Memory for cached per-error-pattern output distributions, in bytes.
  std::size_t memo_budget = std::size_t{128} << 20;
};

/// Shot s uses std::mt19937_64(seed + s): it draws, for every gate and
/// operand in order, whether a uniformly random X/Y/Z follows the gate, then
/// an outcome of the resulting state, then the readout flips of each measured
/// bit. With all parameters zero this is exactly sample_shots(circuit, shots,
/// seed).
ShotHistogram sample_noisy_shots(const QuantumCircuit& circuit, const NoiseParams& params,
                                 std::uint64_t shots, std::uint64_t seed,
                                 const NoiseOptions& options = {});

/// Fraction of shots that landed on `expected`.
double certainty(const ShotHistogram& histogram, const std::string& expected);

}  // namespace pqht
