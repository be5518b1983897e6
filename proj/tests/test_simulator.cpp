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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "test_util.hpp"

namespace pqht {
namespace {

using testing::CMatrix;
using testing::embed;
using testing::random_state;

constexpr double kTol = 1e-12;

TEST(GateMatrix, StandardMatrices) {
  const auto h = gate_matrix(GateKind::H);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(h(0, 0) - r), 0, kTol);
  EXPECT_NEAR(std::abs(h(0, 1) - r), 0, kTol);
  EXPECT_NEAR(std::abs(h(1, 0) - r), 0, kTol);
  EXPECT_NEAR(std::abs(h(1, 1) + r), 0, kTol);

  EXPECT_LT((gate_matrix(GateKind::RZ, 0.0) - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), kTol);

  const double theta = 0.7;
  const auto rz = gate_matrix(GateKind::RZ, theta);
  EXPECT_LT(std::abs(rz(0, 0) - std::polar(1.0, -theta / 2)), kTol);
  EXPECT_LT(std::abs(rz(1, 1) - std::polar(1.0, theta / 2)), kTol);

  const auto sx = gate_matrix(GateKind::SX);
  EXPECT_LT((sx * sx - gate_matrix(GateKind::X)).cwiseAbs().maxCoeff(), kTol);
  for (auto k : {GateKind::H, GateKind::X, GateKind::SX, GateKind::CX, GateKind::CCX,
                 GateKind::SWAP}) {
    const auto m = gate_matrix(k);
    EXPECT_LT((m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff(),
              kTol);
  }
  EXPECT_THROW(gate_matrix(GateKind::Measure), std::invalid_argument);
}

TEST(GateMatrix, HadamardConjugatedRzIsRx) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  const auto h = gate_matrix(GateKind::H);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double theta = u(rng);
    const CMatrix hzh = h * gate_matrix(GateKind::RZ, theta) * h;
    worst = std::max(worst, (hzh - rx_matrix(theta)).cwiseAbs().maxCoeff());
  }
  EXPECT_LT(worst, kTol);
}

// Kernels versus explicit tensor embedding of gate_matrix on random states.
TEST(Kernels, MatchEmbeddedMatrices) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<QubitId> qs(n);
      std::iota(qs.begin(), qs.end(), 0);
      std::shuffle(qs.begin(), qs.end(), rng);
      std::vector<Gate> gates{Gate::h(qs[0]), Gate::x(qs[0]), Gate::sx(qs[0]),
                              Gate::rz(qs[0], std::uniform_real_distribution<double>(-9, 9)(rng))};
      if (n >= 2) {
        gates.push_back(Gate::cx(qs[0], qs[1]));
        gates.push_back(Gate::swap(qs[0], qs[1]));
      }
      if (n >= 3) gates.push_back(Gate::ccx(qs[0], qs[1], qs[2]));
      for (const auto& g : gates) {
        auto state = random_state(n, rng);
        const auto before = state.amplitudes();
        apply_gate(state, g);
        const auto full = embed(gate_matrix(g.kind, g.angle), g.operands(), n);
        const Eigen::VectorXcd expect = full * before;
        EXPECT_LT((state.amplitudes() - expect).cwiseAbs().maxCoeff(), kTol)
            << to_string(g) << " n=" << n;
        EXPECT_NEAR(state.norm_squared(), 1.0, kTol);
      }
      for (auto p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        auto state = random_state(n, rng);
        const auto before = state.amplitudes();
        apply_pauli(state, qs[0], p);
        CMatrix local(2, 2);
        using C = std::complex<double>;
        if (p == Pauli::X) local << 0, 1, 1, 0;
        if (p == Pauli::Y) local << 0, C(0, -1), C(0, 1), 0;
        if (p == Pauli::Z) local << 1, 0, 0, -1;
        const std::array<QubitId, 1> op{qs[0]};
        const Eigen::VectorXcd expect = embed(local, op, n) * before;
        EXPECT_LT((state.amplitudes() - expect).cwiseAbs().maxCoeff(), kTol);
      }
    }
  }
}

TEST(Kernels, TemplatedOnScalar) {
  StateVector<float> s(2);
  apply_h(s, 0);
  apply_cx(s, 0, 1);
  EXPECT_NEAR(s.probability(0), 0.5f, 1e-6f);
  EXPECT_NEAR(s.probability(3), 0.5f, 1e-6f);
}

TEST(RunExact, HadamardOnOneQubit) {
  QuantumCircuit qc(1, 0);
  qc.h(0);
  const auto s = run_exact(qc);
  EXPECT_NEAR(std::abs(s[0] - 1 / std::sqrt(2.0)), 0, kTol);
  EXPECT_NEAR(std::abs(s[1] - 1 / std::sqrt(2.0)), 0, kTol);
}

TEST(RunExact, OddPiPositionGivesOneWithPhaseI) {
  QuantumCircuit qc(1, 0);
  qc.h(0).rz(0, -kPi).h(0);
  const auto s = run_exact(qc);
  EXPECT_NEAR(std::norm(s[1]), 1.0, kTol);
  EXPECT_LT(std::abs(s[1] - std::complex<double>(0, 1)), kTol);
}

TEST(RunExact, BooleanRotationRule) {
  for (int n = 0; n <= 3; ++n) {
    QuantumCircuit odd(1, 0);
    odd.h(0).rz(0, -(4.0 * n + 1) * kPi).h(0);
    EXPECT_NEAR(std::norm(run_exact(odd)[1]), 1.0, kTol) << "n=" << n;
    QuantumCircuit even(1, 0);
    even.h(0).rz(0, 4.0 * n * kPi).h(0);
    EXPECT_NEAR(std::norm(run_exact(even)[0]), 1.0, kTol) << "n=" << n;
    QuantumCircuit neg_even(1, 0);
    neg_even.h(0).rz(0, -4.0 * n * kPi).h(0);
    EXPECT_NEAR(std::norm(run_exact(neg_even)[0]), 1.0, kTol) << "n=" << n;
  }
}

TEST(RunExact, ResourceLimit) {
  QuantumCircuit qc(27, 0);
  EXPECT_THROW(run_exact(qc), ResourceLimitError);
  SimulatorOptions small;
  small.max_qubits = 3;
  EXPECT_THROW(run_exact(QuantumCircuit(4, 0), small), ResourceLimitError);
  EXPECT_NO_THROW(run_exact(QuantumCircuit(3, 0), small));
}

TEST(RunExact, MidCircuitMeasurementRejected) {
  QuantumCircuit qc(2, 1);
  qc.h(0).measure(0, 0).x(0);
  EXPECT_THROW(run_exact(qc), std::invalid_argument);
  QuantumCircuit ok(2, 1);
  ok.h(0).measure(0, 0).x(1);
  EXPECT_NO_THROW(run_exact(ok));
}

TEST(Probabilities, BellState) {
  QuantumCircuit qc(2, 0);
  qc.h(0).cx(0, 1);
  const auto s = run_exact(qc);
  const std::vector<QubitId> both{0, 1};
  const auto p = probabilities(s, both);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p.at("00"), 0.5, kTol);
  EXPECT_NEAR(p.at("11"), 0.5, kTol);
  const std::vector<QubitId> dup{0, 0};
  EXPECT_THROW(probabilities(s, dup), std::invalid_argument);
}

TEST(Probabilities, ListedOrderIsLeftToRight) {
  QuantumCircuit qc(3, 0);
  qc.x(2);
  const auto s = run_exact(qc);
  const std::vector<QubitId> order{2, 0, 1};
  EXPECT_NEAR(probabilities(s, order).at("100"), 1.0, kTol);
}

// Boolean fidelity: X/CX/CCX/SWAP networks on basis inputs versus classical
// evaluation, exhaustive over inputs for random networks up to 10 qubits.
TEST(Probabilities, BooleanFidelityExhaustive) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 10; ++n) {
    QuantumCircuit net(n, 0);
    for (int k = 0; k < 12; ++k) {
      std::vector<QubitId> qs(n);
      std::iota(qs.begin(), qs.end(), 0);
      std::shuffle(qs.begin(), qs.end(), rng);
      const auto choice = rng() % 4;
      if (choice == 0 || n < 2) {
        net.x(qs[0]);
      } else if (choice == 1) {
        net.cx(qs[0], qs[1]);
      } else if (choice == 2 && n >= 3) {
        net.ccx(qs[0], qs[1], qs[2]);
      } else {
        net.swap(qs[0], qs[1]);
      }
    }
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const auto input = bits_of(v, n);
      QuantumCircuit prepared(n, 0);
      for (std::size_t q = 0; q < n; ++q) {
        if (input[q]) prepared.x(q);
      }
      prepared.compose(net);
      const auto state = run_exact(prepared);
      const auto expect = evaluate_reversible(net, input);
      std::size_t idx = 0;
      for (std::size_t q = 0; q < n; ++q) idx |= std::size_t{expect[q]} << q;
      ASSERT_NEAR(state.probability(idx), 1.0, kTol) << "n=" << n << " v=" << v;
    }
  }
}

TEST(Sampling, DeterministicWithSeed) {
  QuantumCircuit qc(3, 3);
  qc.h(0).h(1).cx(1, 2).measure(0, 0).measure(1, 1).measure(2, 2);
  const auto a = sample_shots(qc, 5000, 7);
  const auto b = sample_shots(qc, 5000, 7);
  EXPECT_EQ(a, b);
  std::uint64_t total = 0;
  for (const auto& [k, v] : a.counts) {
    total += v;
    EXPECT_EQ(k.size(), 3u);
  }
  EXPECT_EQ(total, 5000u);
  EXPECT_NE(sample_shots(qc, 5000, 8).counts, a.counts);
}

TEST(Sampling, BinomialBoundOnHadamard) {
  QuantumCircuit qc(1, 1);
  qc.h(0).measure(0, 0);
  const auto hist = sample_shots(qc, 19999, 1);
  const double sigma = std::sqrt(19999 * 0.25);
  EXPECT_LT(std::abs(static_cast<double>(hist.count("0")) - 9999.5), 5 * sigma);
  EXPECT_LT(std::abs(static_cast<double>(hist.count("1")) - 9999.5), 5 * sigma);
}

TEST(Sampling, FullStatePathAgreesOnDeterministicCircuit) {
  QuantumCircuit qc(4, 4);
  qc.x(1).x(3);
  for (QubitId q = 0; q < 4; ++q) qc.measure(q, q);
  SimulatorOptions opt;
  opt.marginal_sampling_limit = 2;  // force the per-shot path
  const auto hist = sample_shots(qc, 100, 3, opt);
  EXPECT_EQ(hist.count("0101"), 100u);
  const auto marg = sample_shots(qc, 100, 3);
  EXPECT_EQ(marg.count("0101"), 100u);
}

TEST(Sampling, Errors) {
  QuantumCircuit none(1, 0);
  none.h(0);
  EXPECT_THROW(sample_shots(none, 10, 1), std::invalid_argument);
  QuantumCircuit one(1, 1);
  one.measure(0, 0);
  EXPECT_THROW(sample_shots(one, 0, 1), std::invalid_argument);
}

TEST(Sampling, HistogramKeysFollowClassicalBitOrder) {
  QuantumCircuit qc(2, 2);
  qc.x(0).measure(0, 1).measure(1, 0);
  const auto hist = sample_shots(qc, 10, 0);
  EXPECT_EQ(hist.count("01"), 10u);
  EXPECT_EQ(hist.clbits, (std::vector<ClbitId>{0, 1}));
}

}  // namespace
}  // namespace pqht
