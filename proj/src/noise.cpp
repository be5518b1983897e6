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

#include "pqht/noise.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace pqht {

void NoiseParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string("noise parameter ") + name + " = " +
                                  std::to_string(v) + " is outside [0, 1]");
    }
  };
  check(p1, "p1");
  check(p2, "p2");
  check(r01, "r01");
  check(r10, "r10");
}

namespace {

struct PauliEvent {
  std::uint32_t gate;
  std::uint8_t operand;
  std::uint8_t pauli;
  friend auto operator<=>(const PauliEvent&, const PauliEvent&) = default;
};

class TrajectoryEngine {
 public:
  TrajectoryEngine(QuantumCircuit circuit, std::vector<QubitId> measured, const NoiseOptions& opt)
      : circuit_(std::move(circuit)), measured_(std::move(measured)), opt_(opt) {
    const std::size_t state_bytes = (std::size_t{16}) << circuit_.num_qubits();
    const std::size_t gates = circuit_.size();
    const std::size_t max_states = std::max<std::size_t>(1, opt_.checkpoint_budget / state_bytes);
    stride_ = std::max<std::size_t>(1, (gates + max_states - 1) / max_states);
    StateVector<double> state(circuit_.num_qubits());
    for (std::size_t g = 0; g <= gates; ++g) {
      if (g % stride_ == 0) checkpoints_.push_back(state);
      if (g < gates) apply_gate(state, circuit_[g]);
    }
    ideal_ = cdf_of(state);
    memo_bytes_per_entry_ = sizeof(double) << measured_.size();
  }

  std::size_t num_gates() const { return circuit_.size(); }
  const QuantumCircuit& circuit() const { return circuit_; }

  /// Cumulative output distribution for one error pattern.
  const std::vector<double>& cdf(const std::vector<PauliEvent>& events) {
    if (events.empty()) return ideal_;
    if (auto it = memo_.find(events); it != memo_.end()) return it->second;
    const std::size_t first = events.front().gate;
    const std::size_t c = first / stride_;
    StateVector<double> state = checkpoints_[c];
    std::size_t g = c * stride_;
    auto ev = events.begin();
    for (; g < circuit_.size(); ++g) {
      apply_gate(state, circuit_[g]);
      for (; ev != events.end() && ev->gate == g; ++ev) {
        apply_pauli(state, circuit_[g].qubits[ev->operand], static_cast<Pauli>(ev->pauli));
      }
    }
    auto dist = cdf_of(state);
    if ((memo_.size() + 1) * memo_bytes_per_entry_ > opt_.memo_budget) {
      scratch_ = std::move(dist);
      return scratch_;
    }
    return memo_.emplace(events, std::move(dist)).first->second;
  }

 private:
  std::vector<double> cdf_of(const StateVector<double>& state) const {
    auto d = marginal_distribution(state, measured_);
    std::partial_sum(d.begin(), d.end(), d.begin());
    return d;
  }

  QuantumCircuit circuit_;
  std::vector<QubitId> measured_;
  NoiseOptions opt_;
  std::size_t stride_ = 1;
  std::vector<StateVector<double>> checkpoints_;
  std::vector<double> ideal_;
  std::map<std::vector<PauliEvent>, std::vector<double>> memo_;
  std::vector<double> scratch_;
  std::size_t memo_bytes_per_entry_ = 0;
};

}  // namespace

ShotHistogram sample_noisy_shots(const QuantumCircuit& circuit, const NoiseParams& params,
                                 std::uint64_t shots, std::uint64_t seed,
                                 const NoiseOptions& options) {
  params.validate();
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  if (circuit.measurements().empty()) throw std::invalid_argument("circuit has no measurement");
  if (params.is_zero()) return sample_shots(circuit, shots, seed, options.simulator);

  require_terminal_measurements(circuit);
  auto [compact, old_of_new] = compact_qubits(circuit);
  if (compact.num_qubits() > options.simulator.max_qubits) {
    throw ResourceLimitError("circuit touches " + std::to_string(compact.num_qubits()) +
                             " qubits; the dense simulator limit is " +
                             std::to_string(options.simulator.max_qubits));
  }
  const auto reg = measured_register(compact);
  if (reg.qubits.size() > options.simulator.marginal_sampling_limit) {
    throw ResourceLimitError("noisy sampling supports at most " +
                             std::to_string(options.simulator.marginal_sampling_limit) +
                             " measured bits");
  }

  QuantumCircuit unitary(compact.num_qubits(), 0);
  for (const auto& g : compact) {
    if (g.kind != GateKind::Measure) unitary.append(g);
  }
  TrajectoryEngine engine(std::move(unitary), reg.qubits, options);
  const QuantumCircuit& body = engine.circuit();

  const std::size_t m = reg.qubits.size();
  std::vector<std::uint64_t> tally(std::size_t{1} << m, 0);
  std::vector<PauliEvent> events;
  for (std::uint64_t s = 0; s < shots; ++s) {
    std::mt19937_64 rng(seed + s);
    events.clear();
    for (std::uint32_t gi = 0; gi < body.size(); ++gi) {
      const Gate& g = body[gi];
      const double p = g.size() == 1 ? params.p1 : params.p2;
      for (std::uint8_t k = 0; k < g.size(); ++k) {
        if (uniform01(rng) < p) {
          const auto pauli = static_cast<std::uint8_t>(rng() % 3);
          events.push_back({gi, k, pauli});
        }
      }
    }
    const auto& cdf = engine.cdf(events);
    const double u = uniform01(rng) * cdf.back();
    std::size_t key = std::min<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), cdf.size() - 1);
    for (std::size_t b = 0; b < m; ++b) {
      const bool one = (key >> b) & 1U;
      if (uniform01(rng) < (one ? params.r10 : params.r01)) key ^= std::size_t{1} << b;
    }
    ++tally[key];
  }

  ShotHistogram hist;
  hist.shots = shots;
  hist.seed = seed;
  hist.clbits = reg.clbits;
  for (std::size_t k = 0; k < tally.size(); ++k) {
    if (tally[k] == 0) continue;
    std::string key(m, '0');
    for (std::size_t b = 0; b < m; ++b) {
      if ((k >> b) & 1U) key[b] = '1';
    }
    hist.counts[key] = tally[k];
  }
  return hist;
}

double certainty(const ShotHistogram& histogram, const std::string& expected) {
  if (histogram.shots == 0) throw std::invalid_argument("histogram is empty");
  if (!histogram.counts.empty() && histogram.counts.begin()->first.size() != expected.size()) {
    throw std::invalid_argument("expected bitstring '" + expected + "' has length " +
                                std::to_string(expected.size()) + ", histogram keys have " +
                                std::to_string(histogram.counts.begin()->first.size()));
  }
  if (!histogram.clbits.empty() && histogram.clbits.size() != expected.size()) {
    throw std::invalid_argument("expected bitstring length does not match the measured register");
  }
  return static_cast<double>(histogram.count(expected)) / static_cast<double>(histogram.shots);
}

}  // namespace pqht
