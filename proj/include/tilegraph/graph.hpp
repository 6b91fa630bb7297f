#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tilegraph/tiles.hpp"
#include "tilegraph/zlin.hpp"

// The 2-graph of a basic data set: vertices are fillings of the tile that
// satisfy the rule, paths of degree n are fillings of T(n) that satisfy it on
// every translate, blue edges have degree e1 and red edges degree e2.
namespace tilegraph {

inline constexpr std::size_t kDefaultVertexLimit = 4096;

struct Vertex {
  std::vector<int> values;  // canonical cell order
  std::size_t index = 0;
};

/// Filling of T(degree). Values live on the bounding grid of the region;
/// grid points outside the region are kept at zero.
class Path {
 public:
  Path() = default;
  Path(std::shared_ptr<const Tile> tile, Point degree);

  const Tile& tile() const { return *tile_; }
  const std::shared_ptr<const Tile>& tile_ptr() const { return tile_; }
  Point degree() const noexcept { return degree_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool in_domain(Point p) const noexcept;

  int at(Point p) const { return grid_[static_cast<std::size_t>(p.y) * width_ + p.x]; }
  void set(Point p, int v) { grid_[static_cast<std::size_t>(p.y) * width_ + p.x] = v; }
  const std::vector<int>& grid() const noexcept { return grid_; }

  /// Values on T + offset, read back onto the tile in canonical order.
  std::vector<int> restrict_at(Point offset) const;
  std::vector<int> range_values() const { return restrict_at({0, 0}); }
  std::vector<int> source_values() const { return restrict_at(degree_); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.degree_ == b.degree_ && a.width_ == b.width_ && a.grid_ == b.grid_;
  }

  /// Rows separated by '/', top row first; cells outside the region are
  /// left out, so rows can be shorter than the grid.
  std::string to_string() const;
  /// One line per row, top row first.
  std::vector<std::string> grid_lines() const;

 private:
  std::shared_ptr<const Tile> tile_;
  Point degree_{};
  int width_ = 0;
  int height_ = 0;
  std::vector<int> grid_;
};

/// Builds a path of the given degree from rows listed bottom row first
/// (each string holds one digit per cell). Used for hand-written examples.
Path path_from_rows(std::shared_ptr<const Tile> tile, Point degree, const std::vector<std::string>& rows_bottom_up);

/// Every translate T + m, 0 <= m <= degree, satisfies the rule.
bool is_valid_path(const BasicData& data, const Path& path);

/// Vertex matrices as adjacency lists. B(u, v) = 1 iff there is a blue edge
/// with range u and source v, that is v(m - e1) = u(m) for m in T and T + e1.
struct VertexMatrices {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> blue_sources;  // row u of B, sorted
  std::vector<std::vector<std::uint32_t>> red_sources;   // row u of R, sorted

  int B(std::size_t u, std::size_t v) const;
  int R(std::size_t u, std::size_t v) const;
  zlin::IntegerMatrix dense_B() const;
  zlin::IntegerMatrix dense_R() const;
};

struct Edge {
  std::size_t range = 0;
  std::size_t source = 0;
  Path path;
};

class Graph {
 public:
  /// Errors: CornersNotInvertible, EnumerationTooLarge.
  explicit Graph(BasicData data, std::size_t vertex_limit = kDefaultVertexLimit);

  const BasicData& data() const noexcept { return data_; }
  const std::shared_ptr<const Tile>& tile_ptr() const noexcept { return tile_; }
  std::size_t vertex_count() const noexcept { return codes_.size(); }
  Vertex vertex(std::size_t index) const;
  std::vector<int> vertex_values(std::size_t index) const;
  std::optional<std::size_t> index_of(const std::vector<int>& values) const;
  /// Index of the vertex with the given values; throws TheoremViolation if
  /// the values are not a vertex.
  std::size_t require_index(const std::vector<int>& values) const;
  std::size_t range(const Path& p) const { return require_index(p.range_values()); }
  std::size_t source(const Path& p) const { return require_index(p.source_values()); }

  const VertexMatrices& matrices() const noexcept { return matrices_; }

  Path vertex_path(std::size_t index) const;
  /// Edges of degree e1 (blue) or e2 (red) with the given range, in order
  /// of their source index.
  std::vector<Edge> edges_with_range(std::size_t range, bool blue) const;
  /// Edges with the given source, in order of their range index.
  std::vector<Edge> edges_with_source(std::size_t source, bool blue) const;
  Edge edge(std::size_t range, std::size_t source, bool blue) const;

  /// All paths of degree d with range v, as blue edge sequences followed by
  /// red ones. Errors: EnumerationTooLarge.
  std::vector<Path> paths_from(std::size_t v, Point d, std::size_t limit = 1u << 20) const;

 private:
  std::uint64_t code_of(const std::vector<int>& values) const;
  std::vector<int> decode(std::uint64_t code) const;
  void build_matrices();

  BasicData data_;
  std::shared_ptr<const Tile> tile_;
  std::vector<std::uint64_t> codes_;
  VertexMatrices matrices_;
};

std::vector<Vertex> enumerate_vertices(const BasicData& data, std::size_t limit = kDefaultVertexLimit);
VertexMatrices vertex_matrices(const BasicData& data, std::size_t limit = kDefaultVertexLimit);

/// Structural checks on the vertex matrices of a graph.
struct SkeletonReport {
  std::size_t vertices = 0;
  bool vertex_count_ok = false;       // q^(|T|-1)
  bool entries_binary = true;
  bool blue_sums_ok = false;          // every row and column sum is q^c2
  bool red_sums_ok = false;           // every row and column sum is q^c1
  bool commute = false;               // BR == RB
  bool blue_equal_or_orthogonal = false;
  bool red_equal_or_orthogonal = false;
  bool blue_is_permutation = false;
  bool ok() const {
    return vertex_count_ok && entries_binary && blue_sums_ok && red_sums_ok && commute &&
           blue_equal_or_orthogonal && red_equal_or_orthogonal;
  }
};
SkeletonReport check_skeleton(const Graph& g);

/// BR as adjacency counts, row u listing (v, count).
std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> blue_red_product(const VertexMatrices& m,
                                                                                    bool blue_first);

/// The unique path whose first d(mu) part is mu and whose remainder is nu.
/// Errors: SourceRangeMismatch, CornersNotInvertible.
Path compose_paths(const BasicData& data, const Path& mu, const Path& nu);
/// (lambda(0, m), lambda(m, d)). Errors: DegreeOutOfRange.
std::pair<Path, Path> factorize_path(const Path& lambda, Point m);
/// lambda(m, n)(i) = lambda(m + i). Errors: DegreeOutOfRange.
Path segment(const Path& lambda, Point m, Point n);

struct SquareReport {
  std::size_t squares = 0;            // valid fillings of T(1,1)
  std::size_t blue_red_pairs = 0;     // composable (blue, red) edge pairs
  std::size_t red_blue_pairs = 0;
  bool blue_red_bijective = false;    // square -> its blue-red factorization
  bool red_blue_bijective = false;
  bool holds() const { return blue_red_bijective && red_blue_bijective; }
};
/// Brute force over all fillings; works for any rule.
SquareReport check_square_bijection(const BasicData& data);

/// A path of degree k(1,1) with range v and source u, where k is the least
/// integer with k(1,1) outside the tile. Free cells are filled with 0.
/// Errors: CornersNotInvertible.
Path connect_vertices(const Graph& g, std::size_t v, std::size_t u);

enum class WitnessStatus { Found, NoWitnessUpToBound };

struct AperiodicityReport {
  std::size_t vertex = 0;
  Point m{};
  Point n{};
  Point bound{};
  WitnessStatus status = WitnessStatus::NoWitnessUpToBound;
  std::optional<Path> witness;
  bool constructive = false;     // found by the direct construction
  std::string diagnostic;        // e.g. "constant along the short diagonals"
  bool periodicity_proved = false;
};

/// lambda(m, m + d - m v n) != lambda(n, n + d - m v n) for r(lambda) = v.
bool separates(const Path& lambda, Point m, Point n);

/// Witness for the aperiodicity condition at (v, m, n). Tries the direct
/// construction when t = 0 and all three corners are invertible, and
/// otherwise searches vΛ^d for m v n <= d <= bound. A missing bound means
/// m v n + (3,3).
AperiodicityReport aperiodicity_witness(const Graph& g, std::size_t v, Point m, Point n,
                                        std::optional<Point> bound = std::nullopt, bool allow_construction = true);

struct TraceShiftReport {
  int c = 0;
  std::size_t vertices = 0;
  std::size_t blue_edges = 0;
  std::size_t red_edges = 0;
  bool bijective = false;
};
/// Checks that adding c to every value maps the trace-0 graph onto this one,
/// vertex by vertex and edge by edge. Errors: ConstantNotValid.
TraceShiftReport trace_shift_isomorphism(const BasicData& data, int c,
                                         std::size_t vertex_limit = kDefaultVertexLimit);

struct SimplicityReport {
  bool c1_positive = false;
  bool c2_positive = false;
  bool trace_ok = false;  // t = 0 or reducible to it by a trace shift
  bool three_invertible_corners = false;
  bool all_hold() const { return c1_positive && c2_positive && trace_ok && three_invertible_corners; }
  std::optional<std::size_t> loop_vertex;
  std::optional<Path> loop;      // r = s = loop_vertex, first edge alpha
  std::optional<Path> entrance;  // blue edge beta != alpha into loop_vertex
  std::vector<std::string> notes;
};
SimplicityReport simplicity_hypotheses(const BasicData& data, std::size_t vertex_limit = kDefaultVertexLimit);

}  // namespace tilegraph
