#include "tilegraph/table_data.hpp"

namespace tilegraph {

namespace {

struct Row {
  std::vector<int> rows;
  std::vector<std::uint64_t> by_q;  // q = 2, 3, 4, 5; 0 marks an unknown cell
};

// Orders of K0 and K1, which agree for every entry.
const std::vector<Row> kRows = {
    {{3}, {3, 8, 15, 24}},
    {{2, 1}, {1, 2, 3, 4}},
    {{4}, {7, 26, 63, 124}},
    {{3, 1}, {1, 2, 3, 4}},
    {{2, 2}, {1, 2, 3, 4}},
    {{5}, {15, 80, 255, 624}},
    {{4, 1}, {1, 2, 3, 4}},
    {{3, 2}, {1, 2, 3, 4}},
    {{3, 1, 1}, {3, 8, 15, 24}},
    {{6}, {31, 242, 1023, 0}},
    {{5, 1}, {1, 2, 3, 0}},
    {{4, 2}, {1, 2, 3, 0}},
    {{4, 1, 1}, {1, 2, 3, 0}},
    {{3, 3}, {1, 2, 3, 0}},
    {{3, 2, 1}, {3, 8, 15, 0}},
    {{7}, {63, 728, 0, 0}},
    {{6, 1}, {1, 2, 0, 0}},
    {{5, 2}, {1, 2, 0, 0}},
    {{5, 1, 1}, {3, 8, 0, 0}},
    {{4, 3}, {1, 2, 0, 0}},
    {{4, 2, 1}, {1, 2, 0, 0}},
    {{4, 1, 1, 1}, {7, 26, 0, 0}},
    {{3, 3, 1}, {3, 8, 0, 0}},
};

}  // namespace

const std::vector<TableCell>& reference_table() {
  static const std::vector<TableCell> cells = [] {
    std::vector<TableCell> out;
    for (const auto& row : kRows)
      for (std::size_t i = 0; i < row.by_q.size(); ++i)
        if (row.by_q[i] != 0) out.push_back({row.rows, static_cast<int>(i) + 2, row.by_q[i]});
    return out;
  }();
  return cells;
}

}  // namespace tilegraph
