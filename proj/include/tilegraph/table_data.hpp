#pragma once

#include <cstdint>
#include <vector>

namespace tilegraph {

/// Expected |K0| (= |K1|) for one tile and alphabet size, with t = 0 and w = 1.
struct TableCell {
  std::vector<int> rows;
  int q = 2;
  std::uint64_t order = 0;
};

/// Known cells in row order, each row by increasing q. Cells with no known
/// value are absent.
const std::vector<TableCell>& reference_table();

}  // namespace tilegraph
