#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tilegraph/graph.hpp"
#include "tilegraph/tiles.hpp"

// Finite windows of the two dimensional shift: fillings of T(extent) + base
// that satisfy the trace 0 rule on every translate of the tile they contain.
namespace tilegraph {

struct WindowConfiguration {
  Point base{};
  Path values;  // local coordinates; absolute point = base + local

  Point extent() const { return values.degree(); }
  /// Value at an absolute point, if it lies in the window.
  std::optional<int> at(Point absolute) const;
  /// Rows top first, as in the path dump.
  std::vector<std::string> grid_lines() const { return values.grid_lines(); }
  friend bool operator==(const WindowConfiguration& a, const WindowConfiguration& b) {
    return a.base == b.base && a.values == b.values;
  }
};

bool is_valid_window(const BasicData& data, const WindowConfiguration& conf);

/// Random valid window: a uniform range vertex extended by uniform blue then
/// red edges. Errors: TraceNonZero, CornersNotInvertible.
WindowConfiguration sample_window(const Graph& g, Point extent, std::uint64_t seed);
WindowConfiguration sample_window(const BasicData& data, Point extent, std::uint64_t seed);

/// (alpha_p f)(n) = f(n + p).
WindowConfiguration shift_window(const WindowConfiguration& conf, Point p);

/// Sub-window T(extent) + base. Errors: DegreeOutOfRange when it does not fit.
WindowConfiguration restrict_window(const WindowConfiguration& conf, Point base, Point extent);

struct CorrespondenceReport {
  Point degree{};
  std::size_t paths = 0;
  std::size_t windows = 0;
  bool counts_equal = false;
  bool maps_inverse = false;      // window -> path -> window and back are identities
  bool segments_consistent = false;  // x(i,i)(0) = x(i-j,i-j)(j)
  bool ok() const { return counts_equal && maps_inverse && segments_consistent; }
};
/// Paths of degree n versus valid fillings of T(n). Errors: TraceNonZero,
/// EnumerationTooLarge.
CorrespondenceReport path_window_correspondence(const Graph& g, Point n);

struct DiagonalScanReport {
  std::vector<std::pair<Point, Point>> pairs;  // cells a, a + e1 - e2 of the tile
  bool certified = false;   // every vertex is constant on every pair
  std::optional<std::size_t> violating_vertex;
  bool covers_all_degrees = false;  // each such pair in T(d) sits inside one translate, d <= bound
  std::string diagnostic;
};
/// Looks for vertices constant along the short diagonals, which forces
/// lambda(p) = lambda(p + e1 - e2) on every path and rules out aperiodicity.
DiagonalScanReport diagonal_periodicity_scan(const Graph& g, Point bound = {4, 4});

}  // namespace tilegraph
