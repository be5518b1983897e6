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

#include "pqht/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

namespace pqht {
namespace {

void require_distinct(std::initializer_list<std::span<const QubitId>> groups, const char* what) {
  std::set<QubitId> seen;
  for (auto g : groups) {
    for (auto q : g) {
      if (!seen.insert(q).second) {
        throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) +
                                    " is used twice");
      }
    }
  }
}

std::size_t register_size(std::initializer_list<std::span<const QubitId>> groups) {
  QubitId hi = 0;
  for (auto g : groups) {
    for (auto q : g) hi = std::max(hi, q);
  }
  return hi + 1;
}

// MAJ: carry-in x, addend bit y, running bit z.
void majority(QuantumCircuit& qc, QubitId x, QubitId y, QubitId z) {
  qc.cx(z, y).cx(z, x).ccx(x, y, z);
}

void unmajority(QuantumCircuit& qc, QubitId x, QubitId y, QubitId z) {
  qc.ccx(x, y, z).cx(z, x).cx(x, y);
}

}  // namespace

QuantumCircuit build_adder(const AdderLayout& layout) {
  const std::size_t w = layout.a.size();
  if (w == 0 || layout.b.size() != w) {
    throw std::invalid_argument("adder: operand registers must be non-empty and of equal width");
  }
  if (layout.carries.size() != 1) throw std::invalid_argument("adder: expects one carry ancilla");
  const QubitId cout[] = {layout.carry_out};
  require_distinct({layout.a, layout.b, layout.carries, cout}, "adder");

  QuantumCircuit qc(register_size({layout.a, layout.b, layout.carries, cout}), 0);
  const auto& a = layout.a;
  const auto& b = layout.b;
  majority(qc, layout.carries[0], b[0], a[0]);
  for (std::size_t i = 1; i < w; ++i) majority(qc, a[i - 1], b[i], a[i]);
  qc.cx(a[w - 1], layout.carry_out);
  for (std::size_t i = w - 1; i >= 1; --i) unmajority(qc, a[i - 1], b[i], a[i]);
  unmajority(qc, layout.carries[0], b[0], a[0]);
  return qc;
}

QuantumCircuit build_adder3(const AdderLayout& layout) {
  if (layout.a.size() != 3 || layout.b.size() != 3) {
    throw std::invalid_argument("adder3: operand registers must have 3 bits");
  }
  return build_adder(layout);
}

std::size_t comparator_ancilla_count(std::size_t width) {
  return width <= 1 ? 0 : width - 1;
}

// Minterm expansion, most significant bit first:
//   A < B  =  XOR_i [ eq_{w-1} ... eq_{i+1} . !A_i . B_i ]
// The terms are disjoint so XOR equals OR. A is negated in place, and B_i is
// turned into eq_i = !A_i ^ B_i in place once its own term has been added.
// ancillas[0] holds the !A_i . B_i product, ancillas[1..] the running prefix
// AND of the eq flags.
QuantumCircuit build_comparator(const ComparatorLayout& layout) {
  const std::size_t w = layout.a.size();
  if (w == 0 || layout.b.size() != w) {
    throw std::invalid_argument("comparator: operand registers must be non-empty and of equal width");
  }
  if (layout.ancillas.size() != comparator_ancilla_count(w)) {
    throw std::invalid_argument("comparator: expects " + std::to_string(comparator_ancilla_count(w)) +
                                " ancillas for width " + std::to_string(w));
  }
  const QubitId res[] = {layout.result};
  require_distinct({layout.a, layout.b, layout.ancillas, res}, "comparator");

  QuantumCircuit body(register_size({layout.a, layout.b, layout.ancillas, res}), 0);
  const auto& a = layout.a;
  const auto& b = layout.b;
  const QubitId r = layout.result;

  // prefix(i) = qubit holding AND of eq_j for j > i, valid for i <= w-2.
  auto prefix = [&](std::size_t i) -> QubitId {
    return i == w - 2 ? b[w - 1] : layout.ancillas[w - 2 - i];
  };

  for (auto q : a) body.x(q);
  // Top bit: the term has no prefix.
  body.ccx(a[w - 1], b[w - 1], r);
  body.cx(a[w - 1], b[w - 1]);
  for (std::size_t ii = w - 1; ii-- > 0;) {
    const std::size_t i = ii;
    const QubitId t = layout.ancillas[0];
    body.ccx(a[i], b[i], t);
    body.ccx(prefix(i), t, r);
    body.ccx(a[i], b[i], t);
    if (i == 0) break;
    body.cx(a[i], b[i]);
    body.ccx(prefix(i), b[i], prefix(i - 1));
  }
  // Uncompute the prefixes and eq flags, then restore A.
  for (std::size_t i = 1; i + 1 < w; ++i) {
    body.ccx(prefix(i), b[i], prefix(i - 1));
    body.cx(a[i], b[i]);
  }
  body.cx(a[w - 1], b[w - 1]);
  for (auto q : a) body.x(q);
  return body;
}

QuantumCircuit build_comparator_lt(const ComparatorLayout& layout) {
  if (layout.a.size() != 2 || layout.b.size() != 2) {
    throw std::invalid_argument("comparator_lt: operand registers must have 2 bits");
  }
  return build_comparator(layout);
}

namespace {

std::size_t count_width(std::size_t n) { return static_cast<std::size_t>(std::bit_width(n)); }

void check_threshold_args(std::size_t n, std::size_t threshold) {
  if (n < kMinThresholdInputs || n > kMaxThresholdInputs) {
    throw std::invalid_argument("threshold unit: input count " + std::to_string(n) +
                                " outside [2, 7]");
  }
  if (threshold < 1 || threshold > n) {
    throw std::invalid_argument("threshold unit: threshold " + std::to_string(threshold) +
                                " outside [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

std::size_t threshold_workspace_size(std::size_t num_inputs) {
  check_threshold_args(num_inputs, 1);
  const std::size_t w = count_width(num_inputs);
  return w + w + (w - 1) + 2 + comparator_ancilla_count(w);
}

ThresholdLayout threshold_layout(std::span<const QubitId> inputs,
                                 std::span<const QubitId> workspace, QubitId output) {
  const std::size_t n = inputs.size();
  if (workspace.size() < threshold_workspace_size(n)) {
    throw std::invalid_argument("threshold unit: workspace too small");
  }
  const std::size_t w = count_width(n);
  ThresholdLayout l;
  l.inputs.assign(inputs.begin(), inputs.end());
  auto it = workspace.begin();
  auto take = [&](std::size_t k) {
    std::vector<QubitId> v(it, it + static_cast<std::ptrdiff_t>(k));
    it += static_cast<std::ptrdiff_t>(k);
    return v;
  };
  l.count = take(w);
  l.threshold = take(w);
  l.zero_ext = take(w - 1);
  l.adder_carry = *it++;
  l.adder_carry_out = *it++;
  l.comparator_ancillas = take(comparator_ancilla_count(w));
  l.output = output;
  return l;
}

QuantumCircuit build_threshold(const ThresholdLayout& l, std::size_t threshold,
                               std::size_t num_qubits) {
  check_threshold_args(l.inputs.size(), threshold);
  const QubitId singles[] = {l.adder_carry, l.adder_carry_out, l.output};
  require_distinct({l.inputs, l.count, l.threshold, l.zero_ext, l.comparator_ancillas, singles},
                   "threshold unit");

  QuantumCircuit popcount(num_qubits, 0);
  for (auto x : l.inputs) {
    AdderLayout add;
    add.a.push_back(x);
    add.a.insert(add.a.end(), l.zero_ext.begin(), l.zero_ext.end());
    add.b = l.count;
    add.carries = {l.adder_carry};
    add.carry_out = l.adder_carry_out;
    popcount.compose(build_adder(add));
  }

  QuantumCircuit load(num_qubits, 0);
  for (std::size_t i = 0; i < l.threshold.size(); ++i) {
    if ((threshold >> i) & 1U) load.x(l.threshold[i]);
  }

  ComparatorLayout cmp{l.count, l.threshold, l.comparator_ancillas, l.output};

  QuantumCircuit qc(num_qubits, 0);
  qc.compose(load).compose(popcount).compose(build_comparator(cmp));
  // output now holds count < threshold
  qc.x(l.output);
  qc.compose(inverse(popcount)).compose(load);
  return qc;
}

ThresholdUnit build_threshold_unit(std::span<const QubitId> inputs, std::size_t threshold) {
  check_threshold_args(inputs.size(), threshold);
  const QubitId first = *std::max_element(inputs.begin(), inputs.end()) + 1;
  std::vector<QubitId> workspace(threshold_workspace_size(inputs.size()));
  for (std::size_t i = 0; i < workspace.size(); ++i) workspace[i] = first + i;
  const QubitId output = first + workspace.size();
  auto layout = threshold_layout(inputs, workspace, output);
  auto circuit = build_threshold(layout, threshold, output + 1);
  return {std::move(circuit), output, std::move(layout)};
}

}  // namespace pqht
