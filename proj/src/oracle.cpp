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

#include "pqht/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pqht {

bool pattern_present(const PixelGrid& grid, const PatternSpec& pattern) {
  return std::all_of(pattern.pixels.begin(), pattern.pixels.end(),
                     [&](const Pixel& p) { return grid.at(p); });
}

std::vector<std::size_t> TruthTable::rows_containing(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].output.at(k)) out.push_back(i);
  }
  return out;
}

TruthTable full_truth_table(std::size_t width, std::size_t height,
                            std::span<const PatternSpec> patterns) {
  TruthTable table;
  table.width = width;
  table.height = height;
  table.layout = assign_layout(width, height, patterns);
  const std::size_t k = table.layout.num_inputs();
  if (k >= 32) throw std::invalid_argument("too many pixel lines to enumerate");
  const std::uint64_t n = std::uint64_t{1} << k;
  table.rows.reserve(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    TruthRow row;
    row.input = bits_of(v, k);
    const PixelGrid grid = grid_from_vector(width, height, table.layout, row.input);
    for (const auto& p : patterns) row.output.push_back(pattern_present(grid, p) ? 1 : 0);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string truth_table_csv(const TruthTable& table) {
  std::ostringstream os;
  os << "input_bits,expected_output\n";
  for (const auto& r : table.rows) os << r.input_bits() << ',' << r.output_bits() << '\n';
  return os.str();
}

}  // namespace pqht
