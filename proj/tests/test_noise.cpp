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

#include <gtest/gtest.h>

#include <cmath>

#include "pqht/builder.hpp"
#include "pqht/oracle.hpp"
#include "pqht/simulator.hpp"
#include "pqht/statevector.hpp"

namespace pqht {
namespace {

void expect_binomial(std::uint64_t count, std::uint64_t shots, double p, double sigmas,
                     const std::string& what) {
  const double mean = shots * p;
  const double sd = std::sqrt(shots * p * (1 - p));
  EXPECT_LE(std::abs(count - mean), sigmas * sd + 1e-9) << what << " count " << count
                                                        << " expected " << mean;
}

PQHTCircuit preset(const std::string& bits) {
  const auto patterns = default_3x3_patterns();
  const auto layout = assign_layout(3, 3, patterns);
  return build_pqht(grid_from_vector(3, 3, layout, parse_bits(bits)), patterns);
}

TEST(Noise, ZeroNoiseIsIdealSampling) {
  const auto built = preset("111000");
  EXPECT_EQ(sample_noisy_shots(built.circuit, {}, 500, 7), sample_shots(built.circuit, 500, 7));
  QuantumCircuit bell(2, 2);
  bell.h(0).cx(0, 1).measure(0, 0).measure(1, 1);
  EXPECT_EQ(sample_noisy_shots(bell, {}, 1000, 3), sample_shots(bell, 1000, 3));
}

TEST(Noise, SingleQubitPauliAfterX) {
  // X then a uniform X/Y/Z: two of three branches return to |0>.
  QuantumCircuit qc(1, 1);
  qc.x(0).measure(0, 0);
  const auto hist = sample_noisy_shots(qc, {1.0, 0.0, 0.0, 0.0}, 30000, 11);
  expect_binomial(hist.count("1"), 30000, 1.0 / 3, 5, "p1=1");
}

TEST(Noise, TwoQubitBranchesMatchEnumeration) {
  QuantumCircuit qc(2, 2);
  qc.h(0).cx(0, 1).measure(0, 0).measure(1, 1);
  std::map<std::string, double> expect;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      StateVector<double> s(2);
      apply_h(s, 0);
      apply_cx(s, 0, 1);
      apply_pauli(s, 0, static_cast<Pauli>(a));
      apply_pauli(s, 1, static_cast<Pauli>(b));
      for (Eigen::Index i = 0; i < 4; ++i) {
        expect[format_bits(bits_of(i, 2))] += std::norm(s.amplitudes()[i]) / 9.0;
      }
    }
  }
  const std::uint64_t shots = 40000;
  const auto hist = sample_noisy_shots(qc, {0.0, 1.0, 0.0, 0.0}, shots, 5);
  for (const auto& [key, p] : expect) expect_binomial(hist.count(key), shots, p, 5, key);
}

TEST(Noise, ReadoutFlipRates) {
  QuantumCircuit qc(2, 2);
  qc.x(1).measure(0, 0).measure(1, 1);
  const std::uint64_t shots = 20000;
  const auto hist = sample_noisy_shots(qc, {0.0, 0.0, 0.05, 0.2}, shots, 99);
  std::uint64_t flipped0 = 0, flipped1 = 0;
  for (const auto& [key, n] : hist.counts) {
    if (key[0] == '1') flipped0 += n;
    if (key[1] == '0') flipped1 += n;
  }
  expect_binomial(flipped0, shots, 0.05, 3, "r01");
  expect_binomial(flipped1, shots, 0.2, 3, "r10");
}

// Pilot run (seed 20) gave 17615/19999 on the expected channel; the band is
// that frequency +- 5 binomial sigma and was frozen before the checks below.
constexpr double kPilotCertainty = 17615.0 / 19999.0;
constexpr double kPilotBand = 0.0115;

TEST(Noise, PilotRunReproduces) {
  const auto built = preset("111000");
  const auto hist = sample_noisy_shots(built.circuit, {0.001, 0.01, 0.02, 0.02}, 19999, 20);
  EXPECT_EQ(hist.count("1000"), 17615u);
}

TEST(Noise, DefaultNoiseKeepsArgmaxInBand) {
  const auto built = preset("111000");
  for (std::uint64_t seed : {1u, 99u, 4242u}) {
    const auto hist = sample_noisy_shots(built.circuit, {0.001, 0.01, 0.02, 0.02}, 19999, seed);
    EXPECT_EQ(hist.argmax(), "1000");
    const double c = certainty(hist, "1000");
    EXPECT_LT(c, 1.0);
    EXPECT_NEAR(c, kPilotCertainty, kPilotBand) << seed;
  }
}

TEST(Noise, ZeroNoiseChiSquare) {
  QuantumCircuit qc(3, 3);
  qc.h(0).h(1).rz(1, 0.7).h(1).h(2).cx(2, 0).rz(0, 1.9).h(0);
  qc.measure(0, 0).measure(1, 1).measure(2, 2);
  const auto exact = output_distribution(qc);
  ASSERT_EQ(exact.size(), 8u);
  const std::uint64_t shots = 19999;
  const auto hist = sample_noisy_shots(qc, {}, shots, 123);
  double chi2 = 0.0;
  for (const auto& [key, p] : exact) {
    const double e = p * shots;
    const double d = static_cast<double>(hist.count(key)) - e;
    chi2 += d * d / e;
  }
  // 0.999 quantile of chi-square with 7 degrees of freedom
  EXPECT_LT(chi2, 24.322);
}

TEST(Noise, MeanCertaintyDegradesWithTwoQubitNoise) {
  const auto patterns = default_3x3_patterns();
  const auto table = full_truth_table(3, 3, patterns);
  std::vector<QuantumCircuit> circuits;
  for (const auto& row : table.rows) {
    circuits.push_back(build_pqht(grid_from_vector(3, 3, table.layout, row.input), patterns).circuit);
  }
  std::vector<double> means;
  for (double p2 : {0.0, 0.005, 0.01, 0.02}) {
    double sum = 0.0;
    for (std::size_t i = 0; i < circuits.size(); ++i) {
      const auto hist = sample_noisy_shots(circuits[i], {0.001, p2, 0.02, 0.02}, 2048, 7 + i);
      sum += certainty(hist, table[i].output_bits());
    }
    means.push_back(sum / circuits.size());
  }
  int inversions = 0;
  for (std::size_t k = 1; k < means.size(); ++k) inversions += means[k] > means[k - 1];
  EXPECT_LE(inversions, 1);
  EXPECT_GT(means.front(), means.back());
}

TEST(Noise, DeterministicPerSeed) {
  const auto built = preset("100011");
  const NoiseParams p{0.01, 0.02, 0.01, 0.01};
  const auto a = sample_noisy_shots(built.circuit, p, 300, 4);
  EXPECT_EQ(a, sample_noisy_shots(built.circuit, p, 300, 4));
  EXPECT_NE(a.counts, sample_noisy_shots(built.circuit, p, 300, 5).counts);
}

TEST(Noise, TightBudgetsGiveSameHistogram) {
  const auto built = preset("111111");
  const NoiseParams p{0.01, 0.05, 0.0, 0.0};
  NoiseOptions tight;
  tight.checkpoint_budget = 0;
  tight.memo_budget = 0;
  EXPECT_EQ(sample_noisy_shots(built.circuit, p, 200, 8),
            sample_noisy_shots(built.circuit, p, 200, 8, tight));
}

TEST(Noise, Validation) {
  QuantumCircuit qc(1, 1);
  qc.measure(0, 0);
  EXPECT_THROW(sample_noisy_shots(qc, {-0.1, 0, 0, 0}, 10, 1), std::invalid_argument);
  EXPECT_THROW(sample_noisy_shots(qc, {0, 1.5, 0, 0}, 10, 1), std::invalid_argument);
  EXPECT_THROW((NoiseParams{0, 0, std::nan(""), 0}.validate()), std::invalid_argument);
  QuantumCircuit bad(1, 1);
  bad.measure(0, 0).x(0);
  EXPECT_THROW(sample_noisy_shots(bad, {0.1, 0, 0, 0}, 10, 1), std::invalid_argument);
}

TEST(Certainty, FractionAndErrors) {
  ShotHistogram h;
  h.counts = {{"10", 3}, {"01", 1}};
  h.shots = 4;
  EXPECT_DOUBLE_EQ(certainty(h, "10"), 0.75);
  EXPECT_DOUBLE_EQ(certainty(h, "11"), 0.0);
  EXPECT_THROW(certainty(h, "1"), std::invalid_argument);
  EXPECT_THROW(certainty(ShotHistogram{}, "1"), std::invalid_argument);
}

}  // namespace
}  // namespace pqht
