#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tilegraph {

/// Lattice point (x, y) in Z^2; x runs along the blue direction e1 and y
/// along the red direction e2. Ordering is lexicographic, x first.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(int k, Point a) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Point, Point) = default;
  friend constexpr auto operator<=>(Point, Point) = default;
};

inline constexpr Point kE1{1, 0};
inline constexpr Point kE2{0, 1};

/// Coordinate-wise a <= b.
constexpr bool leq(Point a, Point b) { return a.x <= b.x && a.y <= b.y; }
constexpr Point join(Point a, Point b) { return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y}; }
constexpr Point meet(Point a, Point b) { return {a.x < b.x ? a.x : b.x, a.y < b.y ? a.y : b.y}; }
constexpr bool nonnegative(Point a) { return a.x >= 0 && a.y >= 0; }

std::string to_string(Point p);
/// Parses "a,b" or "(a,b)".
Point parse_point(std::string_view text);

/// Finite hereditary subset of N^2, given by its row lengths bottom row
/// first (row y holds the cells (0,y) ... (rows[y]-1, y)).
class Tile {
 public:
  Tile() = default;
  explicit Tile(std::vector<int> rows);

  const std::vector<int>& rows() const noexcept { return rows_; }
  /// Cells in canonical order: lexicographic by (x, y).
  const std::vector<Point>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  /// Top right corner of the bounding box.
  int c1() const noexcept { return rows_.front() - 1; }
  int c2() const noexcept { return static_cast<int>(rows_.size()) - 1; }

  bool contains(Point p) const noexcept {
    return p.y >= 0 && p.y < static_cast<int>(rows_.size()) && p.x >= 0 && p.x < rows_[p.y];
  }
  /// Position of a cell in canonical order.
  std::optional<std::size_t> index_of(Point p) const noexcept;

  friend bool operator==(const Tile& a, const Tile& b) { return a.rows_ == b.rows_; }

  /// Row lengths joined by commas, e.g. "2,1".
  std::string to_string() const;

 private:
  std::vector<int> rows_;
  std::vector<Point> cells_;
  std::vector<int> index_;  // (c1+1) x (c2+1) grid, -1 outside the tile
};

/// Errors: EmptyRows, RowsNotDecreasing (also for non-positive lengths).
Tile parse_tile(const std::vector<int>& rows);
/// Comma separated row lengths. Anything describing more than two
/// dimensions ("/" or ";" separated layers) is UnsupportedDimension.
Tile parse_tile_text(std::string_view text);
std::vector<int> rows_of(const Tile& tile);

struct TileMetrics {
  int c1 = 0;
  int c2 = 0;
  std::vector<int> h;      // h[i]: top y in column i
  std::vector<int> wends;  // wends[i]: last x in row i
  std::size_t size = 0;
};
TileMetrics tile_metrics(const Tile& tile);

/// Reflection in the diagonal.
Tile conjugate_tile(const Tile& tile);

/// T(n), the union of the translates T + m for 0 <= m <= n. Points are kept
/// on the bounding grid of width c1+1+n.x and height c2+1+n.y.
class Region {
 public:
  Region(const Tile& tile, Point degree);

  Point degree() const noexcept { return degree_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t grid_size() const noexcept { return static_cast<std::size_t>(width_) * height_; }
  std::size_t grid_index(Point p) const noexcept { return static_cast<std::size_t>(p.y) * width_ + p.x; }

  bool contains(Point p) const noexcept;
  /// Cells in canonical order.
  const std::vector<Point>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

 private:
  std::vector<int> rows_;
  Point degree_;
  int width_;
  int height_;
  std::vector<Point> cells_;
};

/// Errors: NegativeDegree.
Region region_of_degree(const Tile& tile, Point n);

/// Errors: NotInvertible (also InvalidInput for q < 2).
int mod_inverse(int a, int q);
/// Canonical representative in [0, q).
constexpr int reduce(long long a, int q) {
  long long r = a % q;
  return static_cast<int>(r < 0 ? r + q : r);
}

/// Basic data (T, q, t, w): the tile, alphabet size, trace and rule. The
/// rule is stored per cell in canonical order.
struct BasicData {
  Tile tile;
  int q = 2;
  int t = 0;
  std::vector<int> w;

  int weight(Point cell) const { return w[*tile.index_of(cell)]; }
  Point corner1() const { return {tile.c1(), 0}; }
  Point corner2() const { return {0, tile.c2()}; }
  std::string describe() const;
};

/// Rule text "(i1,i2):v;(j1,j2):u;..." with an optional "w=" prefix. Cells
/// not mentioned get weight 1. Errors: InvalidInput.
std::vector<int> parse_rule(std::string_view text, const Tile& tile, int q);

/// Validates q >= 2 and reduces t and the weights. An empty rule means w = 1.
/// Errors: InvalidInput.
BasicData make_basic_data(Tile tile, int q, long long t = 0, std::vector<int> w = {});

struct BasicDataFlags {
  bool invertible_corners = false;
  bool three_invertible_corners = false;
  /// c with c * sum(w) = t (mod q), when one exists.
  std::optional<int> trace_shift_constant;
};
BasicDataFlags validate_basic_data(const BasicData& data);

/// Throws CornersNotInvertible unless both corner weights are units mod q.
void require_invertible_corners(const BasicData& data);

/// Sum of w(i) * f(i + offset) over the tile, reduced mod q, where f is read
/// from a grid of the given width.
int placement_sum(const BasicData& data, const std::vector<int>& grid, int width, Point offset);

/// Brute force: every function on T(n) satisfying the vertex equation on
/// each translate T + m, 0 <= m <= n, as grids in Region layout, visited in
/// lexicographic order of the canonical cell values. Works for arbitrary
/// rules. Stops early when the visitor returns false. Errors:
/// EnumerationTooLarge when more than `limit` fillings exist.
void enumerate_fillings(const BasicData& data, Point n,
                        const std::function<bool(const std::vector<int>&)>& visit,
                        std::size_t limit = 1u << 22);

}  // namespace tilegraph
