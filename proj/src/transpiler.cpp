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

#include "pqht/transpiler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "pqht/simulator.hpp"

namespace pqht {

CouplingMap::CouplingMap(std::size_t num_qubits, std::vector<std::pair<QubitId, QubitId>> edges,
                         std::string name)
    : num_qubits_(num_qubits), edges_(std::move(edges)), name_(std::move(name)) {
  if (num_qubits_ == 0) throw std::invalid_argument("coupling map needs at least one qubit");
  neighbours_.resize(num_qubits_);
  std::set<std::pair<QubitId, QubitId>> seen;
  for (auto [a, b] : edges_) {
    if (a >= num_qubits_ || b >= num_qubits_) {
      throw std::invalid_argument("coupling edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") references a missing qubit");
    }
    if (a == b) throw std::invalid_argument("coupling edge is a self loop");
    if (!seen.insert(std::minmax(a, b)).second) {
      throw std::invalid_argument("duplicate coupling edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    }
    neighbours_[a].push_back(b);
    neighbours_[b].push_back(a);
  }
  for (auto& n : neighbours_) std::sort(n.begin(), n.end());

  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  dist_.assign(num_qubits_ * num_qubits_, inf);
  for (QubitId s = 0; s < num_qubits_; ++s) {
    std::queue<QubitId> bfs;
    dist_[s * num_qubits_ + s] = 0;
    bfs.push(s);
    while (!bfs.empty()) {
      const QubitId u = bfs.front();
      bfs.pop();
      for (QubitId v : neighbours_[u]) {
        auto& d = dist_[s * num_qubits_ + v];
        if (d == inf) {
          d = dist_[s * num_qubits_ + u] + 1;
          bfs.push(v);
        }
      }
    }
  }
  if (std::find(dist_.begin(), dist_.end(), inf) != dist_.end()) {
    throw std::invalid_argument("coupling map is not connected");
  }
}

CouplingMap heavy_hex_27() {
  return CouplingMap(27,
                     {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
                      {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
                      {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
                      {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}},
                     "heavy-hex-27");
}

CouplingMap fully_connected(std::size_t num_qubits) {
  std::vector<std::pair<QubitId, QubitId>> edges;
  for (QubitId a = 0; a < num_qubits; ++a) {
    for (QubitId b = a + 1; b < num_qubits; ++b) edges.emplace_back(a, b);
  }
  return CouplingMap(num_qubits, std::move(edges), "full-" + std::to_string(num_qubits));
}

CouplingMap linear_chain(std::size_t num_qubits) {
  std::vector<std::pair<QubitId, QubitId>> edges;
  for (QubitId a = 0; a + 1 < num_qubits; ++a) edges.emplace_back(a, a + 1);
  return CouplingMap(num_qubits, std::move(edges), "line-" + std::to_string(num_qubits));
}

namespace {

void basis_h(QuantumCircuit& qc, QubitId q) {
  qc.rz(q, kPi / 2).sx(q).rz(q, kPi / 2);
}

}  // namespace

QuantumCircuit decompose_to_basis(const QuantumCircuit& circuit) {
  QuantumCircuit out(circuit.num_qubits(), circuit.num_clbits());
  const double t = kPi / 4;
  for (const auto& g : circuit) {
    const auto& q = g.qubits;
    switch (g.kind) {
      case GateKind::H:
        basis_h(out, q[0]);
        break;
      case GateKind::SWAP:
        out.cx(q[0], q[1]).cx(q[1], q[0]).cx(q[0], q[1]);
        break;
      case GateKind::CCX: {
        const QubitId a = q[0], b = q[1], c = q[2];
        basis_h(out, c);
        out.cx(b, c).rz(c, -t).cx(a, c).rz(c, t).cx(b, c).rz(c, -t).cx(a, c);
        out.rz(b, t).rz(c, t);
        basis_h(out, c);
        out.cx(a, b).rz(a, t).rz(b, -t).cx(a, b);
        break;
      }
      default:
        out.append(g);
        break;
    }
  }
  return out;
}

bool is_basis_circuit(const QuantumCircuit& circuit) {
  return std::all_of(circuit.begin(), circuit.end(), [](const Gate& g) {
    switch (g.kind) {
      case GateKind::RZ:
      case GateKind::SX:
      case GateKind::X:
      case GateKind::CX:
      case GateKind::Measure:
        return true;
      default:
        return false;
    }
  });
}

QuantumCircuit expand_swaps(const QuantumCircuit& circuit) {
  QuantumCircuit out(circuit.num_qubits(), circuit.num_clbits());
  for (const auto& g : circuit) {
    if (g.kind == GateKind::SWAP) {
      out.cx(g.qubits[0], g.qubits[1]).cx(g.qubits[1], g.qubits[0]).cx(g.qubits[0], g.qubits[1]);
    } else {
      out.append(g);
    }
  }
  return out;
}

bool respects_coupling(const QuantumCircuit& circuit, const CouplingMap& coupling) {
  if (circuit.num_qubits() > coupling.num_qubits()) return false;
  for (const auto& g : circuit) {
    if (g.size() == 2 && !coupling.adjacent(g.qubits[0], g.qubits[1])) return false;
    if (g.size() > 2) return false;
  }
  return true;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<QubitId> degree_matching_layout(const QuantumCircuit& circuit,
                                            const CouplingMap& coupling) {
  const std::size_t n = circuit.num_qubits();
  std::vector<std::vector<std::size_t>> weight(n, std::vector<std::size_t>(n, 0));
  std::vector<std::size_t> activity(n, 0);
  for (const auto& g : circuit) {
    if (g.size() != 2) continue;
    ++weight[g.qubits[0]][g.qubits[1]];
    ++weight[g.qubits[1]][g.qubits[0]];
    ++activity[g.qubits[0]];
    ++activity[g.qubits[1]];
  }
  std::vector<QubitId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](QubitId a, QubitId b) { return activity[a] > activity[b]; });

  std::vector<QubitId> l2p(n);
  std::vector<bool> taken(coupling.num_qubits(), false);
  std::vector<bool> placed(n, false);
  for (QubitId l : order) {
    QubitId best = 0;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    std::size_t best_degree = 0;
    for (QubitId p = 0; p < coupling.num_qubits(); ++p) {
      if (taken[p]) continue;
      std::size_t cost = 0;
      for (QubitId o = 0; o < n; ++o) {
        if (placed[o]) cost += weight[l][o] * coupling.distance(p, l2p[o]);
      }
      if (cost < best_cost || (cost == best_cost && coupling.degree(p) > best_degree)) {
        best = p;
        best_cost = cost;
        best_degree = coupling.degree(p);
      }
    }
    l2p[l] = best;
    taken[best] = true;
    placed[l] = true;
  }
  return l2p;
}

TranspileReport make_report(const QuantumCircuit& before, const QuantumCircuit& after,
                            std::size_t swaps, std::uint64_t seed) {
  const auto ma = metrics(after);
  TranspileReport r;
  r.depth_before = metrics(before).depth;
  r.depth_after = ma.depth;
  r.cx_count = ma.count(GateKind::CX);
  r.swap_count = swaps;
  r.total_gates = after.size();
  r.seed = seed;
  return r;
}

}  // namespace

RoutedCircuit route(const QuantumCircuit& circuit, const CouplingMap& coupling,
                    std::uint64_t seed, const RouteOptions& options) {
  if (circuit.num_qubits() > coupling.num_qubits()) {
    throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) +
                                " logical qubits but the coupling map only " +
                                std::to_string(coupling.num_qubits()));
  }
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (circuit[i].size() > 2) {
      throw std::invalid_argument("instruction " + std::to_string(i) + " (" +
                                  to_string(circuit[i]) +
                                  ") has three operands; decompose before routing");
    }
  }

  const std::size_t n_log = circuit.num_qubits();
  const std::size_t n_phys = coupling.num_qubits();
  std::vector<QubitId> l2p(n_log);
  if (options.initial_layout == InitialLayout::DegreeMatching) {
    l2p = degree_matching_layout(circuit, coupling);
  } else {
    std::iota(l2p.begin(), l2p.end(), 0);
  }
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> p2l(n_phys, none);
  for (QubitId l = 0; l < n_log; ++l) p2l[l2p[l]] = l;

  std::vector<std::size_t> two_qubit;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (circuit[i].size() == 2) two_qubit.push_back(i);
  }

  const auto& edges = coupling.edges();
  std::vector<std::uint64_t> rank(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) rank[e] = splitmix64(seed * 0x100000001b3ULL + e);

  LayoutMapping mapping;
  mapping.initial = l2p;
  QuantumCircuit out(n_phys, circuit.num_clbits());
  std::size_t swaps = 0;
  std::size_t next_2q = 0;

  auto swap_physical = [&](QubitId pa, QubitId pb) {
    const std::size_t la = p2l[pa], lb = p2l[pb];
    std::swap(p2l[pa], p2l[pb]);
    if (la != none) l2p[la] = pb;
    if (lb != none) l2p[lb] = pa;
  };

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    Gate g = circuit[i];
    if (g.size() == 2) {
      const QubitId la = g.qubits[0], lb = g.qubits[1];
      while (coupling.distance(l2p[la], l2p[lb]) > 1) {
        const std::size_t current = coupling.distance(l2p[la], l2p[lb]);
        std::size_t best = none;
        std::size_t best_cost = none;
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const auto [u, v] = edges[e];
          if (u != l2p[la] && v != l2p[la] && u != l2p[lb] && v != l2p[lb]) continue;
          swap_physical(u, v);
          std::size_t cost = none;
          if (coupling.distance(l2p[la], l2p[lb]) < current) {
            cost = 0;
            const std::size_t stop = std::min(two_qubit.size(), next_2q + options.lookahead);
            for (std::size_t k = next_2q; k < stop; ++k) {
              const Gate& h = circuit[two_qubit[k]];
              cost += coupling.distance(l2p[h.qubits[0]], l2p[h.qubits[1]]);
            }
          }
          swap_physical(u, v);
          if (cost == none) continue;
          if (best == none || cost < best_cost || (cost == best_cost && rank[e] < rank[best])) {
            best = e;
            best_cost = cost;
          }
        }
        const auto [u, v] = edges[best];
        out.swap(u, v);
        swap_physical(u, v);
        ++swaps;
      }
      ++next_2q;
    }
    for (std::size_t k = 0; k < g.size(); ++k) g.qubits[k] = l2p[g.qubits[k]];
    out.append(g);
  }
  mapping.final = l2p;
  auto report = make_report(circuit, out, swaps, seed);
  return {std::move(out), std::move(mapping), report};
}

RoutedCircuit transpile(const QuantumCircuit& circuit, const CouplingMap& coupling,
                        std::uint64_t seed, const RouteOptions& options) {
  auto routed = route(decompose_to_basis(circuit), coupling, seed, options);
  routed.circuit = expand_swaps(routed.circuit);
  routed.report = make_report(circuit, routed.circuit, routed.report.swap_count, seed);
  return routed;
}

double total_variation(const std::map<std::string, double>& p,
                       const std::map<std::string, double>& q) {
  double tv = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.contains(k)) tv += std::abs(v);
  }
  return tv / 2;
}

namespace {

std::map<std::string, double> prepared_distribution(const QuantumCircuit& circuit,
                                                    std::span<const std::uint8_t> vector,
                                                    std::span<const QubitId> where) {
  QuantumCircuit prepared(circuit.num_qubits(), circuit.num_clbits());
  for (std::size_t i = 0; i < vector.size(); ++i) {
    if (vector[i]) prepared.x(where[i]);
  }
  prepared.compose(circuit);
  auto [compact, unused] = compact_qubits(prepared);
  return output_distribution(compact);
}

}  // namespace

EquivalenceResult verify_equivalence(const QuantumCircuit& original, const QuantumCircuit& lowered,
                                     const LayoutMapping& mapping,
                                     std::span<const std::vector<std::uint8_t>> test_vectors,
                                     double tolerance) {
  EquivalenceResult result;
  std::vector<QubitId> identity(original.num_qubits());
  std::iota(identity.begin(), identity.end(), 0);
  for (const auto& v : test_vectors) {
    if (v.size() > original.num_qubits() || v.size() > mapping.initial.size()) {
      throw std::invalid_argument("test vector longer than the logical register");
    }
    const auto p = prepared_distribution(original, v, identity);
    const auto q = prepared_distribution(lowered, v, mapping.initial);
    const double tv = total_variation(p, q);
    result.max_tv_distance = std::max(result.max_tv_distance, tv);
    if (tv > tolerance && result.equivalent) {
      result.equivalent = false;
      result.counterexample = format_bits(v);
    }
  }
  return result;
}

}  // namespace pqht
