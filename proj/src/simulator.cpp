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

#include "pqht/simulator.hpp"

#include <algorithm>
#include <numeric>

namespace pqht {

std::string ShotHistogram::argmax() const {
  std::string best;
  std::uint64_t best_count = 0;
  for (const auto& [key, n] : counts) {
    if (best.empty() || n > best_count) {
      best = key;
      best_count = n;
    }
  }
  return best;
}

ShotHistogram ShotHistogram::marginal(std::span<const std::size_t> positions) const {
  ShotHistogram out;
  out.shots = shots;
  out.seed = seed;
  for (auto p : positions) out.clbits.push_back(clbits.at(p));
  for (const auto& [key, n] : counts) {
    std::string sub;
    for (auto p : positions) sub.push_back(key.at(p));
    out.counts[sub] += n;
  }
  return out;
}

void require_terminal_measurements(const QuantumCircuit& circuit) {
  std::vector<bool> measured(circuit.num_qubits(), false);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    for (auto q : g.operands()) {
      if (measured[q]) {
        throw std::invalid_argument("instruction " + std::to_string(i) + " (" + to_string(g) +
                                    ") acts on q[" + std::to_string(q) +
                                    "] after it was measured; only terminal measurement is supported");
      }
    }
    if (g.kind == GateKind::Measure) measured[g.qubits[0]] = true;
  }
}

StateVector<double> run_exact(const QuantumCircuit& circuit, const SimulatorOptions& options) {
  if (circuit.num_qubits() > options.max_qubits) {
    throw ResourceLimitError("circuit has " + std::to_string(circuit.num_qubits()) +
                             " qubits; the dense simulator limit is " +
                             std::to_string(options.max_qubits));
  }
  require_terminal_measurements(circuit);
  StateVector<double> state(circuit.num_qubits());
  apply_range(state, circuit, 0, circuit.size());
  return state;
}

std::vector<double> marginal_distribution(const StateVector<double>& state,
                                          std::span<const QubitId> qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= state.num_qubits()) {
      throw std::invalid_argument("qubit " + std::to_string(qubits[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("duplicate qubit " + std::to_string(qubits[i]) +
                                    " in measured set");
      }
    }
  }
  std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    const double p = state.probability(idx);
    if (p == 0.0) continue;
    std::size_t key = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) key |= ((idx >> qubits[i]) & 1U) << i;
    dist[key] += p;
  }
  return dist;
}

namespace {

std::string key_of(std::size_t index, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((index >> i) & 1U) s[i] = '1';
  }
  return s;
}

}  // namespace

std::map<std::string, double> probabilities(const StateVector<double>& state,
                                            std::span<const QubitId> qubits) {
  auto dist = marginal_distribution(state, qubits);
  std::map<std::string, double> out;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist[k] > 0.0) out[key_of(k, qubits.size())] = dist[k];
  }
  return out;
}

MeasuredRegister measured_register(const QuantumCircuit& circuit) {
  auto pairs = circuit.measurements();
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  MeasuredRegister reg;
  for (auto [q, c] : pairs) {
    reg.qubits.push_back(q);
    reg.clbits.push_back(c);
  }
  return reg;
}

std::map<std::string, double> output_distribution(const QuantumCircuit& circuit,
                                                  const SimulatorOptions& options) {
  auto reg = measured_register(circuit);
  return probabilities(run_exact(circuit, options), reg.qubits);
}

ShotHistogram sample_distribution(std::span<const double> distribution, std::size_t width,
                                  std::uint64_t shots, std::uint64_t seed) {
  std::vector<double> cdf(distribution.size());
  std::partial_sum(distribution.begin(), distribution.end(), cdf.begin());
  const double total = cdf.empty() ? 0.0 : cdf.back();
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> tally(distribution.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cdf.begin());
    // Guard against landing past the end through rounding, and skip
    // zero-probability entries that share a cdf value.
    if (k >= cdf.size()) k = cdf.size() - 1;
    while (distribution[k] == 0.0 && k > 0) --k;
    ++tally[k];
  }
  ShotHistogram hist;
  hist.shots = shots;
  hist.seed = seed;
  for (std::size_t k = 0; k < tally.size(); ++k) {
    if (tally[k] > 0) hist.counts[key_of(k, width)] = tally[k];
  }
  return hist;
}

ShotHistogram sample_shots(const QuantumCircuit& circuit, std::uint64_t shots, std::uint64_t seed,
                           const SimulatorOptions& options) {
  auto reg = measured_register(circuit);
  if (reg.qubits.empty()) throw std::invalid_argument("circuit has no measurement");
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  auto state = run_exact(circuit, options);

  ShotHistogram hist;
  if (reg.qubits.size() <= options.marginal_sampling_limit) {
    auto dist = marginal_distribution(state, reg.qubits);
    hist = sample_distribution(dist, reg.qubits.size(), shots, seed);
  } else {
    std::vector<double> cdf(state.dimension());
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) cdf[i] = acc += state.probability(i);
    std::mt19937_64 rng(seed);
    hist.shots = shots;
    hist.seed = seed;
    for (std::uint64_t s = 0; s < shots; ++s) {
      auto it = std::upper_bound(cdf.begin(), cdf.end(), uniform01(rng) * acc);
      const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
      std::string key(reg.qubits.size(), '0');
      for (std::size_t i = 0; i < reg.qubits.size(); ++i) {
        if ((idx >> reg.qubits[i]) & 1U) key[i] = '1';
      }
      ++hist.counts[key];
    }
  }
  hist.clbits = reg.clbits;
  return hist;
}

bool is_reversible_boolean(const QuantumCircuit& circuit) {
  return std::all_of(circuit.begin(), circuit.end(), [](const Gate& g) {
    return g.kind == GateKind::X || g.kind == GateKind::CX || g.kind == GateKind::CCX ||
           g.kind == GateKind::SWAP || g.kind == GateKind::Measure;
  });
}

std::vector<std::uint8_t> evaluate_reversible(const QuantumCircuit& circuit,
                                              std::span<const std::uint8_t> input) {
  if (input.size() != circuit.num_qubits()) {
    throw std::invalid_argument("input has " + std::to_string(input.size()) + " bits for " +
                                std::to_string(circuit.num_qubits()) + " qubits");
  }
  std::vector<std::uint8_t> bits(input.begin(), input.end());
  for (const auto& g : circuit) {
    const auto& q = g.qubits;
    switch (g.kind) {
      case GateKind::X:
        bits[q[0]] ^= 1U;
        break;
      case GateKind::CX:
        bits[q[1]] ^= bits[q[0]];
        break;
      case GateKind::CCX:
        bits[q[2]] ^= bits[q[0]] & bits[q[1]];
        break;
      case GateKind::SWAP:
        std::swap(bits[q[0]], bits[q[1]]);
        break;
      case GateKind::Measure:
        break;
      default:
        throw std::invalid_argument(to_string(g) + " is not a classical reversible gate");
    }
  }
  return bits;
}

}  // namespace pqht
