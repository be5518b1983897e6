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

// Classical ground truth for pattern detection.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pqht/builder.hpp"

namespace pqht {

/// True iff every pixel of `pattern` is set in `grid`.
bool pattern_present(const PixelGrid& grid, const PatternSpec& pattern);

struct TruthRow {
  std::vector<std::uint8_t> input;   // bit i = input qubit i
  std::vector<std::uint8_t> output;  // bit k = pattern k
  std::string input_bits() const { return format_bits(input); }
  std::string output_bits() const { return format_bits(output); }
};

/// One row per assignment of the used pixels, ascending binary order with
/// input qubit 0 as the least significant bit.
struct TruthTable {
  std::size_t width = 0;
  std::size_t height = 0;
  PQHTLayout layout;
  std::vector<TruthRow> rows;

  std::size_t size() const { return rows.size(); }
  const TruthRow& operator[](std::size_t i) const { return rows[i]; }
  /// Rows whose input contains every pixel of pattern `k`.
  std::vector<std::size_t> rows_containing(std::size_t k) const;
};

TruthTable full_truth_table(std::size_t width, std::size_t height,
                            std::span<const PatternSpec> patterns);

/// CSV with header `input_bits,expected_output`.
std::string truth_table_csv(const TruthTable& table);

}  // namespace pqht
