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

// Lowering to the {RZ, SX, X, CX} basis and SWAP routing on a coupling graph.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqht/circuit.hpp"

namespace pqht {

/// Undirected, connected graph of allowed two-qubit interactions.
class CouplingMap {
 public:
  /// Throws std::invalid_argument for out-of-range, self-loop or duplicate
  /// edges and for disconnected graphs.
  CouplingMap(std::size_t num_qubits, std::vector<std::pair<QubitId, QubitId>> edges,
              std::string name = {});

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<std::pair<QubitId, QubitId>>& edges() const { return edges_; }
  const std::string& name() const { return name_; }
  bool adjacent(QubitId a, QubitId b) const { return distance(a, b) == 1; }
  std::size_t distance(QubitId a, QubitId b) const { return dist_[a * num_qubits_ + b]; }
  std::size_t degree(QubitId q) const { return neighbours_[q].size(); }
  const std::vector<QubitId>& neighbours(QubitId q) const { return neighbours_[q]; }

 private:
  std::size_t num_qubits_;
  std::vector<std::pair<QubitId, QubitId>> edges_;
  std::string name_;
  std::vector<std::vector<QubitId>> neighbours_;
  std::vector<std::size_t> dist_;
};

/// 27-qubit heavy-hex lattice, 28 edges:
///
///   0-1 1-2 1-4 2-3 3-5 4-7 5-8 6-7 7-10 8-9 8-11 10-12 11-14 12-13
///   12-15 13-14 14-16 15-18 16-19 17-18 18-21 19-20 19-22 21-23 22-25
///   23-24 24-25 25-26
CouplingMap heavy_hex_27();
CouplingMap fully_connected(std::size_t num_qubits);
CouplingMap linear_chain(std::size_t num_qubits);

/// Logical -> physical assignment before and after routing.
struct LayoutMapping {
  std::vector<QubitId> initial;
  std::vector<QubitId> final;
};

struct TranspileReport {
  std::size_t depth_before = 0;
  std::size_t depth_after = 0;
  std::size_t cx_count = 0;
  std::size_t swap_count = 0;
  std::size_t total_gates = 0;
  std::uint64_t seed = 0;
  friend bool operator==(const TranspileReport&, const TranspileReport&) = default;
};

/// H -> RZ(pi/2) SX RZ(pi/2); CCX -> 6 CX with T-phase RZs; SWAP -> 3 CX.
/// Exact up to global phase.
QuantumCircuit decompose_to_basis(const QuantumCircuit& circuit);

bool is_basis_circuit(const QuantumCircuit& circuit);

/// Every SWAP replaced by three alternating CX gates.
QuantumCircuit expand_swaps(const QuantumCircuit& circuit);

enum class InitialLayout {
  Trivial,         // logical i -> physical i
  DegreeMatching,  // busiest logical qubits onto high-degree, nearby physical qubits
};

struct RouteOptions {
  InitialLayout initial_layout = InitialLayout::Trivial;
  /// Pending two-qubit gates (including the blocked one) in the SWAP cost.
  std::size_t lookahead = 4;
};

struct RoutedCircuit {
  QuantumCircuit circuit;
  LayoutMapping mapping;
  TranspileReport report;
};

/// Greedy SWAP insertion. For a blocked gate, the candidate SWAPs are the
/// coupling edges at either of its physical qubits that bring its operands
/// closer; the winner minimises the summed distance of the pending
/// two-qubit gates. Ties go to the lowest seed-derived rank of the edge, then
/// to the lowest edge index. Output qubits are physical; SWAPs are kept as
/// SWAP gates and counted in the report.
///
/// Throws std::invalid_argument if the circuit has more qubits than the map
/// or contains three-qubit gates.
RoutedCircuit route(const QuantumCircuit& circuit, const CouplingMap& coupling,
                    std::uint64_t seed, const RouteOptions& options = {});

/// decompose_to_basis, route, expand_swaps. The report describes the final
/// basis circuit: depth_before is the depth of the input circuit.
RoutedCircuit transpile(const QuantumCircuit& circuit, const CouplingMap& coupling,
                        std::uint64_t seed, const RouteOptions& options = {});

/// True if every multi-qubit gate acts on a coupling edge.
bool respects_coupling(const QuantumCircuit& circuit, const CouplingMap& coupling);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<std::string> counterexample;  // first failing vector
  double max_tv_distance = 0.0;
};

/// Compares measured-output distributions of `original` and `lowered` by
/// exact simulation. Each test vector (bit i = logical qubit i) is prepared
/// with X gates: on logical qubits in `original`, on mapping.initial in
/// `lowered`. Equivalent iff total variation distance <= tolerance for all.
EquivalenceResult verify_equivalence(const QuantumCircuit& original, const QuantumCircuit& lowered,
                                     const LayoutMapping& mapping,
                                     std::span<const std::vector<std::uint8_t>> test_vectors,
                                     double tolerance = 1e-9);

/// Total variation distance between two keyed distributions.
double total_variation(const std::map<std::string, double>& p,
                       const std::map<std::string, double>& q);

}  // namespace pqht
