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

#include "pqht/builder.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pqht/oracle.hpp"
#include "pqht/simulator.hpp"

namespace pqht {
namespace {

constexpr double kExact = 1e-9;

PQHTCircuit build_vector(const std::string& bits, const BuildOptions& opt = {}) {
  const auto patterns = default_3x3_patterns();
  const auto layout = assign_layout(3, 3, patterns);
  return build_pqht(grid_from_vector(3, 3, layout, parse_bits(bits)), patterns, opt);
}

std::map<std::string, double> outputs(const PQHTCircuit& built) {
  return probabilities(run_exact(built.circuit), built.layout.outputs());
}

TEST(PhaseLabel, ColumnRule) {
  EXPECT_DOUBLE_EQ(phase_of_pixel(0, true), -kPi);
  EXPECT_DOUBLE_EQ(phase_of_pixel(1, true), -5 * kPi);
  EXPECT_DOUBLE_EQ(phase_of_pixel(2, true), -9 * kPi);
  EXPECT_EQ(phase_of_pixel(1, false), 0.0);
}

TEST(Patterns, DefaultPresetOrderAndPixels) {
  const auto p = default_3x3_patterns();
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0].angle_degrees, 90);
  EXPECT_EQ(p[0].pixels, (std::vector<Pixel>{{0, 0}, {0, 1}, {0, 2}}));
  EXPECT_EQ(p[1].angle_degrees, 75);
  EXPECT_EQ(p[1].pixels, (std::vector<Pixel>{{0, 0}, {0, 1}, {1, 2}}));
  EXPECT_EQ(p[2].angle_degrees, 60);
  EXPECT_EQ(p[2].pixels, (std::vector<Pixel>{{0, 0}, {1, 1}, {1, 2}}));
  EXPECT_EQ(p[3].angle_degrees, 45);
  EXPECT_EQ(p[3].pixels, (std::vector<Pixel>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(p[0].name, "B");
  EXPECT_EQ(p[3].name, "A");
}

TEST(Layout, PresetMatchesQubitAssignment) {
  const auto layout = assign_layout(3, 3, default_3x3_patterns());
  const std::vector<Pixel> expect{{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}, {2, 2}};
  ASSERT_EQ(layout.num_inputs(), 6u);
  for (QubitId q = 0; q < 6; ++q) EXPECT_EQ(layout.input_qubits[q].first, expect[q]) << q;
  ASSERT_EQ(layout.units.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(layout.units[k].carries, (std::vector<QubitId>{6 + 2 * k}));
    EXPECT_EQ(layout.units[k].output, 7 + 2 * k);
  }
  EXPECT_EQ(layout.units[0].inputs, (std::vector<QubitId>{0, 1, 2}));
  EXPECT_EQ(layout.units[3].inputs, (std::vector<QubitId>{0, 4, 5}));
  EXPECT_EQ(layout.total_qubits, 14u);
}

TEST(Layout, SmallAndDisjointPatterns) {
  const std::vector<PatternSpec> two{{"pair", 0, {{0, 0}, {1, 0}}}};
  const auto l2 = assign_layout(2, 1, two);
  EXPECT_EQ(l2.num_inputs(), 2u);
  EXPECT_TRUE(l2.units[0].carries.empty());
  EXPECT_EQ(l2.units[0].output, 2u);
  EXPECT_EQ(l2.total_qubits, 3u);

  const std::vector<PatternSpec> disjoint{{"right", 90, {{0, 0}, {0, 1}, {0, 2}}},
                                          {"left", 90, {{2, 0}, {2, 1}, {2, 2}}}};
  EXPECT_EQ(assign_layout(3, 3, disjoint).total_qubits, 10u);
}

TEST(Layout, Errors) {
  const std::vector<PatternSpec> outside{{"bad", 0, {{0, 0}, {3, 0}}}};
  EXPECT_THROW(assign_layout(3, 3, outside), std::invalid_argument);
  const std::vector<PatternSpec> single{{"one", 0, {{0, 0}}}};
  EXPECT_THROW(assign_layout(3, 3, single), std::invalid_argument);
}

TEST(Layout, QubitCountFormulaAndDeterminism) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PatternSpec> patterns;
    const std::size_t np = 1 + rng() % 4;
    for (std::size_t k = 0; k < np; ++k) {
      std::set<Pixel> px;
      const std::size_t size = 2 + rng() % 4;
      while (px.size() < size) px.insert({rng() % 4, rng() % 3});
      patterns.push_back({"p" + std::to_string(k), 0, {px.begin(), px.end()}});
    }
    const auto a = assign_layout(4, 3, patterns);
    std::set<Pixel> used;
    std::size_t extra = 0;
    for (const auto& p : patterns) {
      used.insert(p.pixels.begin(), p.pixels.end());
      extra += p.pixels.size() - 1;
    }
    EXPECT_EQ(a.total_qubits, used.size() + extra);
    const auto b = assign_layout(4, 3, patterns);
    EXPECT_EQ(a.input_qubits, b.input_qubits);
    EXPECT_EQ(a.outputs(), b.outputs());

    // Rule closure on a random image.
    PixelGrid grid(4, 3);
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t r = 0; r < 3; ++r) grid.set({c, r}, rng() % 2);
    }
    const auto built = build_pqht(grid, patterns);
    EXPECT_TRUE(validate_design_rules(built.circuit, built.layout).ok());
  }
}

TEST(Build, VerticalBarFiresFirstUnit) {
  const auto p = outputs(build_vector("111000"));
  EXPECT_NEAR(p.at("1000"), 1.0, kExact);
}

TEST(Build, DiagonalBarFiresFourthUnit) {
  const auto p = outputs(build_vector("100011"));
  EXPECT_NEAR(p.at("0001"), 1.0, kExact);
}

TEST(Build, BlankImage) {
  const auto built = build_vector("000000");
  EXPECT_NEAR(outputs(built).at("0000"), 1.0, kExact);
  std::size_t first_ccx = 0;
  while (built.circuit[first_ccx].kind != GateKind::CCX) ++first_ccx;
  std::size_t rz = 0;
  for (std::size_t i = 0; i < first_ccx; ++i) {
    if (built.circuit[i].kind == GateKind::RZ) {
      EXPECT_EQ(built.circuit[i].angle, 0.0);
      ++rz;
    }
  }
  EXPECT_EQ(rz, 6u);
}

TEST(Build, FullImageFiresAllUnits) {
  EXPECT_NEAR(outputs(build_vector("111111")).at("1111"), 1.0, kExact);
}

TEST(Build, StructureOfFirstBlock) {
  const auto built = build_vector("111011");
  const auto& c = built.circuit;
  for (QubitId q = 0; q < 6; ++q) EXPECT_EQ(c[q], Gate::h(q));
  const double expect[] = {-kPi, -kPi, -kPi, 0.0, -5 * kPi, -9 * kPi};
  for (QubitId q = 0; q < 6; ++q) EXPECT_EQ(c[6 + q], Gate::rz(q, expect[q]));
  for (QubitId q = 0; q < 6; ++q) EXPECT_EQ(c[12 + q], Gate::h(q));
  EXPECT_EQ(c[18], Gate::ccx(0, 1, 6));
  EXPECT_EQ(c[19], Gate::ccx(6, 2, 7));
  // Next block shifts only set lines by -4 pi.
  std::size_t shifts = 0;
  for (std::size_t i = 20; i < 40; ++i) {
    if (c[i].kind == GateKind::RZ) {
      EXPECT_EQ(c[i].angle, -4 * kPi);
      EXPECT_NE(c[i].qubits[0], 3u);
      ++shifts;
    }
  }
  EXPECT_EQ(shifts, 5u);
  const auto m = c.measurements();
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[0], std::make_pair(QubitId{7}, ClbitId{0}));
  EXPECT_EQ(m[3], std::make_pair(QubitId{13}, ClbitId{3}));
}

TEST(Build, MeasureAllMode) {
  const auto built = build_vector("111000", {CoincidenceKind::Maxfinder, MeasureMode::All});
  EXPECT_EQ(built.circuit.num_clbits(), 14u);
  const auto dist = output_distribution(built.circuit);
  // outputs first (q7, q9, q11, q13), then q0..q6, q8, q10, q12
  EXPECT_NEAR(dist.at("1000" "111000" "1" "1" "0" "0"), 1.0, kExact);
}

// Exhaustive detection correctness against the classical oracle.
TEST(Build, FullCoverageAgainstTruthTable) {
  const auto patterns = default_3x3_patterns();
  const auto table = full_truth_table(3, 3, patterns);
  ASSERT_EQ(table.size(), 64u);
  for (const auto& row : table.rows) {
    const auto built = build_pqht(grid_from_vector(3, 3, table.layout, row.input), patterns);
    const auto p = outputs(built);
    ASSERT_NEAR(p.at(row.output_bits()), 1.0, kExact) << row.input_bits();
  }
}

// Every preset pattern uses pixel (0,0); without it nothing is detected.
TEST(Build, SharedOriginCorollary) {
  const auto patterns = default_3x3_patterns();
  for (const auto& p : patterns) {
    EXPECT_NE(std::find(p.pixels.begin(), p.pixels.end(), Pixel{0, 0}), p.pixels.end());
  }
  const auto layout = assign_layout(3, 3, patterns);
  for (std::uint64_t v = 0; v < 64; v += 2) {  // bit 0 (q0) clear
    const auto built = build_pqht(grid_from_vector(3, 3, layout, bits_of(v, 6)), patterns);
    ASSERT_NEAR(outputs(built).at("0000"), 1.0, kExact) << v;
  }
}

TEST(Build, ThresholdUnitsReproduceTruthTable) {
  const auto patterns = default_3x3_patterns();
  const auto table = full_truth_table(3, 3, patterns);
  for (const auto& row : table.rows) {
    const auto built = build_pqht(grid_from_vector(3, 3, table.layout, row.input), patterns,
                                  {CoincidenceKind::Threshold, MeasureMode::Outputs});
    ASSERT_EQ(built.layout.input_qubits, table.layout.input_qubits);
    const auto state = run_exact(built.circuit);
    ASSERT_NEAR(probabilities(state, built.layout.outputs()).at(row.output_bits()), 1.0, kExact)
        << row.input_bits();
    ASSERT_NEAR(probabilities(state, built.layout.workspace)
                    .at(std::string(built.layout.workspace.size(), '0')),
                1.0, kExact);
  }
}

TEST(DesignRules, BuilderOutputIsClean) {
  for (const char* bits : {"000000", "111000", "111111", "100011"}) {
    const auto built = build_vector(bits);
    EXPECT_TRUE(validate_design_rules(built.circuit, built.layout).ok()) << bits;
  }
  const auto thr = build_vector("111111", {CoincidenceKind::Threshold, MeasureMode::Outputs});
  EXPECT_TRUE(validate_design_rules(thr.circuit, thr.layout).ok());
}

TEST(DesignRules, ShiftOfTwoPiFlagged) {
  auto built = build_vector("111000");
  auto& qc = built.circuit;
  std::size_t pos = 0;
  for (std::size_t i = 20; i < qc.size(); ++i) {
    if (qc[i].kind == GateKind::RZ) {
      pos = i;
      break;
    }
  }
  const QubitId q = qc[pos].qubits[0];
  QuantumCircuit mutated(qc.num_qubits(), qc.num_clbits());
  for (std::size_t i = 0; i < qc.size(); ++i) {
    mutated.append(i == pos ? Gate::rz(q, -2 * kPi) : qc[i]);
  }
  const auto report = validate_design_rules(mutated, built.layout);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].rule, "R2");
  EXPECT_EQ(report.violations[0].position, pos);
}

TEST(DesignRules, EvenPixelPhaseFlagged) {
  auto built = build_vector("111000");
  QuantumCircuit mutated(built.circuit.num_qubits(), built.circuit.num_clbits());
  for (std::size_t i = 0; i < built.circuit.size(); ++i) {
    mutated.append(i == 6 ? Gate::rz(0, -3 * kPi) : built.circuit[i]);
  }
  const auto report = validate_design_rules(mutated, built.layout);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].rule, "R1");
  EXPECT_EQ(report.violations[0].position, 6u);
}

TEST(DesignRules, EnclosureAndWiring) {
  const auto layout = assign_layout(3, 3, default_3x3_patterns());
  QuantumCircuit qc(14, 0);
  qc.rz(0, -kPi);          // R3: no H before
  qc.h(1).rz(1, 0).h(1);   // fine
  qc.h(8).rz(8, 0).h(8);   // R3: not a pixel line
  qc.ccx(7, 1, 6);         // R4: reads an output line
  qc.ccx(0, 1, 2);         // R4: writes a pixel line
  const auto report = validate_design_rules(qc, layout);
  std::vector<std::string> rules;
  for (const auto& v : report.violations) rules.push_back(v.rule);
  EXPECT_EQ(rules, (std::vector<std::string>{"R3", "R3", "R4", "R4"}));
}

TEST(Config, GridAndPatternFiles) {
  const auto grid = parse_grid("# image\n001\n001\n111\n");
  EXPECT_EQ(grid.width(), 3u);
  EXPECT_TRUE(grid.at({0, 0}));
  EXPECT_TRUE(grid.at({2, 0}));
  EXPECT_TRUE(grid.at({0, 2}));
  EXPECT_FALSE(grid.at({2, 2}));
  EXPECT_EQ(format_grid(grid), "001\n001\n111\n");
  EXPECT_THROW(parse_grid("01\n011\n"), std::invalid_argument);
  EXPECT_THROW(parse_grid("0x1\n"), std::invalid_argument);

  const auto text = format_patterns(default_3x3_patterns());
  const auto parsed = parse_patterns(text);
  ASSERT_EQ(parsed.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(parsed[k].name, default_3x3_patterns()[k].name);
    EXPECT_EQ(parsed[k].pixels, default_3x3_patterns()[k].pixels);
  }
  EXPECT_THROW(parse_patterns("X 10 (0,0) junk"), std::invalid_argument);
  EXPECT_THROW(parse_patterns("# nothing\n"), std::invalid_argument);
}

}  // namespace
}  // namespace pqht
