#include "tilegraph/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tilegraph/error.hpp"
#include "tilegraph/subshift.hpp"

namespace tilegraph {

// ---------------------------------------------------------------------------
// Path

Path::Path(std::shared_ptr<const Tile> tile, Point degree) : tile_(std::move(tile)), degree_(degree) {
  if (!nonnegative(degree)) throw Error(ErrorCode::NegativeDegree, "degree " + tilegraph::to_string(degree));
  width_ = tile_->c1() + 1 + degree.x;
  height_ = tile_->c2() + 1 + degree.y;
  grid_.assign(static_cast<std::size_t>(width_) * height_, 0);
}

bool Path::in_domain(Point p) const noexcept {
  if (p.x < 0 || p.y < 0 || p.x >= width_ || p.y >= height_) return false;
  return tile_->contains({std::max(p.x - degree_.x, 0), std::max(p.y - degree_.y, 0)});
}

std::vector<int> Path::restrict_at(Point offset) const {
  std::vector<int> out;
  out.reserve(tile_->size());
  for (Point c : tile_->cells()) out.push_back(at(c + offset));
  return out;
}

std::vector<std::string> Path::grid_lines() const {
  int widest = 0;
  for (int v : grid_) widest = std::max(widest, v);
  const bool spaced = widest >= 10;
  std::vector<std::string> lines;
  for (int y = height_ - 1; y >= 0; --y) {
    std::string line;
    for (int x = 0; x < width_; ++x) {
      if (!in_domain({x, y})) continue;
      if (spaced && !line.empty()) line += ' ';
      line += std::to_string(at({x, y}));
    }
    lines.push_back(line);
  }
  return lines;
}

std::string Path::to_string() const {
  std::string out;
  for (const auto& line : grid_lines()) out += (out.empty() ? "" : "/") + line;
  return out;
}

Path path_from_rows(std::shared_ptr<const Tile> tile, Point degree, const std::vector<std::string>& rows_bottom_up) {
  Path p(std::move(tile), degree);
  if (static_cast<int>(rows_bottom_up.size()) != p.height())
    throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(p.height()) + " rows");
  for (int y = 0; y < p.height(); ++y) {
    const std::string& row = rows_bottom_up[static_cast<std::size_t>(y)];
    int x = 0;
    for (char ch : row) {
      if (ch == ' ') continue;
      if (!p.in_domain({x, y}) || ch < '0' || ch > '9')
        throw Error(ErrorCode::InvalidInput, "row " + std::to_string(y) + " does not fit the region");
      p.set({x, y}, ch - '0');
      ++x;
    }
    if (p.in_domain({x, y})) throw Error(ErrorCode::InvalidInput, "row " + std::to_string(y) + " is too short");
  }
  return p;
}

bool is_valid_path(const BasicData& data, const Path& path) {
  for (int mx = 0; mx <= path.degree().x; ++mx)
    for (int my = 0; my <= path.degree().y; ++my)
      if (placement_sum(data, path.grid(), path.width(), {mx, my}) != data.t) return false;
  return true;
}

// ---------------------------------------------------------------------------
// VertexMatrices

namespace {

int lookup_entry(const std::vector<std::uint32_t>& row, std::size_t v) {
  return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(v)) ? 1 : 0;
}

zlin::IntegerMatrix densify(const std::vector<std::vector<std::uint32_t>>& rows, std::size_t n) {
  zlin::IntegerMatrix m(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (auto v : rows[u]) m(u, v) = 1;
  return m;
}

// Calls visit(values) for every vertex agreeing with `partial` on the cells
// where it is not -1; the cell `forced` is solved from the vertex equation.
template <class Visit>
void for_each_completion(const BasicData& data, std::vector<int> partial, std::size_t forced, Visit visit) {
  const int q = data.q;
  const int inverse = mod_inverse(data.w[forced], q);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < partial.size(); ++i)
    if (partial[i] < 0 && i != forced) free.push_back(i);
  for (std::size_t i : free) partial[i] = 0;
  for (;;) {
    long long s = 0;
    for (std::size_t i = 0; i < partial.size(); ++i)
      if (i != forced) s += static_cast<long long>(data.w[i]) * partial[i];
    partial[forced] = reduce(static_cast<long long>(inverse) * reduce(data.t - s, q), q);
    visit(partial);
    std::size_t k = free.size();
    while (k > 0 && partial[free[k - 1]] == q - 1) partial[free[--k]] = 0;
    if (k == 0) break;
    ++partial[free[k - 1]];
  }
}

}  // namespace

int VertexMatrices::B(std::size_t u, std::size_t v) const { return lookup_entry(blue_sources[u], v); }
int VertexMatrices::R(std::size_t u, std::size_t v) const { return lookup_entry(red_sources[u], v); }
zlin::IntegerMatrix VertexMatrices::dense_B() const { return densify(blue_sources, n); }
zlin::IntegerMatrix VertexMatrices::dense_R() const { return densify(red_sources, n); }

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(BasicData data, std::size_t vertex_limit)
    : data_(std::move(data)), tile_(std::make_shared<const Tile>(data_.tile)) {
  require_invertible_corners(data_);
  const std::size_t cells = tile_->size();
  long double expected = 1;
  for (std::size_t i = 0; i + 1 < cells; ++i) expected *= data_.q;
  if (expected > static_cast<long double>(vertex_limit))
    throw Error(ErrorCode::EnumerationTooLarge, "q^(|T|-1) = " + std::to_string(static_cast<double>(expected)) +
                                                    " vertices exceeds the limit " + std::to_string(vertex_limit));
  const std::size_t corner = *tile_->index_of(data_.corner1());
  for_each_completion(data_, std::vector<int>(cells, -1), corner,
                      [&](const std::vector<int>& v) { codes_.push_back(code_of(v)); });
  std::sort(codes_.begin(), codes_.end());
  build_matrices();
}

std::uint64_t Graph::code_of(const std::vector<int>& values) const {
  std::uint64_t code = 0;
  for (int v : values) code = code * static_cast<std::uint64_t>(data_.q) + static_cast<std::uint64_t>(v);
  return code;
}

std::vector<int> Graph::decode(std::uint64_t code) const {
  std::vector<int> values(tile_->size());
  for (std::size_t i = values.size(); i-- > 0;) {
    values[i] = static_cast<int>(code % static_cast<std::uint64_t>(data_.q));
    code /= static_cast<std::uint64_t>(data_.q);
  }
  return values;
}

Vertex Graph::vertex(std::size_t index) const { return {decode(codes_.at(index)), index}; }

std::vector<int> Graph::vertex_values(std::size_t index) const { return decode(codes_.at(index)); }

std::optional<std::size_t> Graph::index_of(const std::vector<int>& values) const {
  if (values.size() != tile_->size()) return std::nullopt;
  for (int v : values)
    if (v < 0 || v >= data_.q) return std::nullopt;
  const std::uint64_t code = code_of(values);
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

std::size_t Graph::require_index(const std::vector<int>& values) const {
  auto idx = index_of(values);
  if (!idx) throw Error(ErrorCode::TheoremViolation, "restriction is not a vertex");
  return *idx;
}

void Graph::build_matrices() {
  const std::size_t n = codes_.size();
  const auto& cells = tile_->cells();
  matrices_.n = n;
  matrices_.blue_sources.resize(n);
  matrices_.red_sources.resize(n);
  const std::size_t corner1 = *tile_->index_of(data_.corner1());
  const std::size_t corner2 = *tile_->index_of(data_.corner2());
  for (std::size_t u = 0; u < n; ++u) {
    const std::vector<int> uv = decode(codes_[u]);
    for (int dir = 0; dir < 2; ++dir) {
      const Point step = dir == 0 ? kE1 : kE2;
      // Sources v satisfy v(i) = u(i + step) wherever i + step is in T.
      std::vector<int> partial(cells.size(), -1);
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (auto j = tile_->index_of(cells[i] + step)) partial[i] = uv[*j];
      auto& row = dir == 0 ? matrices_.blue_sources[u] : matrices_.red_sources[u];
      for_each_completion(data_, partial, dir == 0 ? corner1 : corner2, [&](const std::vector<int>& v) {
        row.push_back(static_cast<std::uint32_t>(require_index(v)));
      });
      std::sort(row.begin(), row.end());
    }
  }
}

Path Graph::vertex_path(std::size_t index) const {
  Path p(tile_, {0, 0});
  const auto values = vertex_values(index);
  for (std::size_t i = 0; i < values.size(); ++i) p.set(tile_->cells()[i], values[i]);
  return p;
}

Edge Graph::edge(std::size_t range, std::size_t source, bool blue) const {
  const Point step = blue ? kE1 : kE2;
  Path p(tile_, step);
  const auto r = vertex_values(range);
  const auto s = vertex_values(source);
  const auto& cells = tile_->cells();
  for (std::size_t i = 0; i < cells.size(); ++i) p.set(cells[i] + step, s[i]);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (p.at(cells[i]) != r[i] && tile_->contains(cells[i] - step))
      throw Error(ErrorCode::SourceRangeMismatch, "vertices are not joined by an edge");
    p.set(cells[i], r[i]);
  }
  return {range, source, std::move(p)};
}

std::vector<Edge> Graph::edges_with_range(std::size_t range, bool blue) const {
  std::vector<Edge> out;
  const auto& row = blue ? matrices_.blue_sources.at(range) : matrices_.red_sources.at(range);
  for (auto v : row) out.push_back(edge(range, v, blue));
  return out;
}

std::vector<Edge> Graph::edges_with_source(std::size_t source, bool blue) const {
  const Point step = blue ? kE1 : kE2;
  const auto& cells = tile_->cells();
  const auto sv = vertex_values(source);
  // Ranges u satisfy u(i + step) = v(i) wherever i + step is in T.
  std::vector<int> partial(cells.size(), -1);
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (auto j = tile_->index_of(cells[i] + step)) partial[*j] = sv[i];
  const std::size_t forced = *tile_->index_of(blue ? data_.corner2() : data_.corner1());
  std::vector<std::size_t> ranges;
  for_each_completion(data_, partial, forced, [&](const std::vector<int>& u) { ranges.push_back(require_index(u)); });
  std::sort(ranges.begin(), ranges.end());
  std::vector<Edge> out;
  for (auto u : ranges) out.push_back(edge(u, source, blue));
  return out;
}

std::vector<Path> Graph::paths_from(std::size_t v, Point d, std::size_t limit) const {
  if (!nonnegative(d)) throw Error(ErrorCode::NegativeDegree, "degree " + to_string(d));
  std::vector<Path> current{vertex_path(v)};
  auto extend = [&](bool blue, int times) {
    for (int k = 0; k < times; ++k) {
      std::vector<Path> next;
      for (const auto& p : current) {
        for (const auto& e : edges_with_range(source(p), blue)) {
          next.push_back(compose_paths(data_, p, e.path));
          if (next.size() > limit)
            throw Error(ErrorCode::EnumerationTooLarge, "more than " + std::to_string(limit) + " paths");
        }
      }
      current = std::move(next);
    }
  };
  extend(true, d.x);
  extend(false, d.y);
  return current;
}

std::vector<Vertex> enumerate_vertices(const BasicData& data, std::size_t limit) {
  Graph g(data, limit);
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) out.push_back(g.vertex(i));
  return out;
}

VertexMatrices vertex_matrices(const BasicData& data, std::size_t limit) { return Graph(data, limit).matrices(); }

std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> blue_red_product(const VertexMatrices& m,
                                                                                    bool blue_first) {
  const auto& first = blue_first ? m.blue_sources : m.red_sources;
  const auto& second = blue_first ? m.red_sources : m.blue_sources;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out(m.n);
  std::vector<std::uint32_t> acc(m.n, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t u = 0; u < m.n; ++u) {
    touched.clear();
    for (auto v : first[u])
      for (auto w : second[v]) {
        if (acc[w]++ == 0) touched.push_back(w);
      }
    std::sort(touched.begin(), touched.end());
    for (auto w : touched) {
      out[u].push_back({w, acc[w]});
      acc[w] = 0;
    }
  }
  return out;
}

namespace {

std::uint64_t ipow(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
  return r;
}

bool sums_ok(const std::vector<std::vector<std::uint32_t>>& rows, std::size_t n, std::uint64_t expected) {
  std::vector<std::uint64_t> col(n, 0);
  for (const auto& r : rows) {
    if (r.size() != expected) return false;
    for (auto v : r) ++col[v];
  }
  return std::all_of(col.begin(), col.end(), [&](std::uint64_t c) { return c == expected; });
}

// Any two rows are equal or share no column, and the same for columns.
bool equal_or_orthogonal(const std::vector<std::vector<std::uint32_t>>& rows, std::size_t n) {
  auto check = [n](const std::vector<std::vector<std::uint32_t>>& lists) {
    std::vector<std::int64_t> owner(n, -1);
    for (std::size_t u = 0; u < lists.size(); ++u) {
      for (auto v : lists[u]) {
        if (owner[v] < 0) {
          owner[v] = static_cast<std::int64_t>(u);
        } else if (lists[static_cast<std::size_t>(owner[v])] != lists[u]) {
          return false;
        }
      }
    }
    return true;
  };
  std::vector<std::vector<std::uint32_t>> cols(n);
  for (std::size_t u = 0; u < rows.size(); ++u)
    for (auto v : rows[u]) cols[v].push_back(static_cast<std::uint32_t>(u));
  return check(rows) && check(cols);
}

}  // namespace

SkeletonReport check_skeleton(const Graph& g) {
  const auto& m = g.matrices();
  const auto& data = g.data();
  SkeletonReport r;
  r.vertices = m.n;
  r.vertex_count_ok = m.n == ipow(data.q, static_cast<int>(data.tile.size()) - 1);
  for (const auto* rows : {&m.blue_sources, &m.red_sources})
    for (const auto& row : *rows)
      r.entries_binary = r.entries_binary && std::adjacent_find(row.begin(), row.end()) == row.end();
  r.blue_sums_ok = sums_ok(m.blue_sources, m.n, ipow(data.q, data.tile.c2()));
  r.red_sums_ok = sums_ok(m.red_sources, m.n, ipow(data.q, data.tile.c1()));
  r.commute = blue_red_product(m, true) == blue_red_product(m, false);
  r.blue_equal_or_orthogonal = equal_or_orthogonal(m.blue_sources, m.n);
  r.red_equal_or_orthogonal = equal_or_orthogonal(m.red_sources, m.n);
  r.blue_is_permutation = sums_ok(m.blue_sources, m.n, 1);
  return r;
}

// ---------------------------------------------------------------------------
// Composition and factorization

Path compose_paths(const BasicData& data, const Path& mu, const Path& nu) {
  require_invertible_corners(data);
  if (mu.source_values() != nu.range_values())
    throw Error(ErrorCode::SourceRangeMismatch, "s(mu) differs from r(nu)");
  const Point m = mu.degree();
  const Point n = nu.degree();
  Path lambda(mu.tile_ptr(), m + n);
  const Tile& tile = mu.tile();
  const int c1 = tile.c1();
  const int c2 = tile.c2();
  for (int x = 0; x < mu.width(); ++x)
    for (int y = 0; y < mu.height(); ++y)
      if (mu.in_domain({x, y})) lambda.set({x, y}, mu.at({x, y}));
  for (int x = 0; x < nu.width(); ++x)
    for (int y = 0; y < nu.height(); ++y)
      if (nu.in_domain({x, y})) lambda.set(Point{x, y} + m, nu.at({x, y}));

  const auto& cells = tile.cells();
  auto solve = [&](Point j, Point corner) {
    // The placement T + (j - corner) has every cell but j filled already.
    const Point offset = j - corner;
    long long s = 0;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i] != corner) s += static_cast<long long>(data.w[i]) * lambda.at(cells[i] + offset);
    const int inverse = mod_inverse(data.weight(corner), data.q);
    lambda.set(j, reduce(static_cast<long long>(inverse) * reduce(data.t - s, data.q), data.q));
  };
  // Bottom right block: columns left to right, each column top to bottom.
  for (int x = c1 + m.x + 1; x <= c1 + m.x + n.x; ++x)
    for (int y = m.y - 1; y >= 0; --y) solve({x, y}, data.corner1());
  // Upper left block: rows bottom to top, each row right to left.
  for (int y = c2 + m.y + 1; y <= c2 + m.y + n.y; ++y)
    for (int x = m.x - 1; x >= 0; --x) solve({x, y}, data.corner2());
  return lambda;
}

Path segment(const Path& lambda, Point m, Point n) {
  if (!nonnegative(m) || !leq(m, n) || !leq(n, lambda.degree()))
    throw Error(ErrorCode::DegreeOutOfRange, "need 0 <= " + to_string(m) + " <= " + to_string(n) +
                                                 " <= " + to_string(lambda.degree()));
  Path out(lambda.tile_ptr(), n - m);
  for (int x = 0; x < out.width(); ++x)
    for (int y = 0; y < out.height(); ++y)
      if (out.in_domain({x, y})) out.set({x, y}, lambda.at(Point{x, y} + m));
  return out;
}

std::pair<Path, Path> factorize_path(const Path& lambda, Point m) {
  return {segment(lambda, {0, 0}, m), segment(lambda, m, lambda.degree())};
}

// ---------------------------------------------------------------------------
// Squares

SquareReport check_square_bijection(const BasicData& data) {
  auto tile = std::make_shared<const Tile>(data.tile);
  auto collect = [&](Point d) {
    std::vector<Path> out;
    enumerate_fillings(data, d, [&](const std::vector<int>& grid) {
      Path p(tile, d);
      for (int x = 0; x < p.width(); ++x)
        for (int y = 0; y < p.height(); ++y) p.set({x, y}, grid[static_cast<std::size_t>(y) * p.width() + x]);
      out.push_back(std::move(p));
      return true;
    });
    return out;
  };
  const auto squares = collect({1, 1});
  const auto blue = collect(kE1);
  const auto red = collect(kE2);

  auto count_pairs = [](const std::vector<Path>& first, const std::vector<Path>& second) {
    std::map<std::vector<int>, std::size_t> by_range;
    for (const auto& p : second) ++by_range[p.range_values()];
    std::size_t total = 0;
    for (const auto& p : first) {
      auto it = by_range.find(p.source_values());
      if (it != by_range.end()) total += it->second;
    }
    return total;
  };

  SquareReport r;
  r.squares = squares.size();
  r.blue_red_pairs = count_pairs(blue, red);
  r.red_blue_pairs = count_pairs(red, blue);
  std::set<std::pair<std::vector<int>, std::vector<int>>> br;
  std::set<std::pair<std::vector<int>, std::vector<int>>> rb;
  for (const auto& s : squares) {
    br.insert({segment(s, {0, 0}, kE1).grid(), segment(s, kE1, {1, 1}).grid()});
    rb.insert({segment(s, {0, 0}, kE2).grid(), segment(s, kE2, {1, 1}).grid()});
  }
  r.blue_red_bijective = br.size() == r.squares && r.squares == r.blue_red_pairs;
  r.red_blue_bijective = rb.size() == r.squares && r.squares == r.red_blue_pairs;
  return r;
}

// ---------------------------------------------------------------------------
// Connectivity

Path connect_vertices(const Graph& g, std::size_t v, std::size_t u) {
  const BasicData& data = g.data();
  require_invertible_corners(data);
  const Tile& tile = *g.tile_ptr();
  const auto& cells = tile.cells();
  const Point diag{1, 1};
  int k = 1;
  while (tile.contains(k * diag)) ++k;
  const auto target = g.vertex_values(u);
  const std::size_t corner = *tile.index_of(data.corner1());
  const int inverse = mod_inverse(data.w[corner], data.q);

  Path mu = g.vertex_path(v);
  for (int p = 0; p < k; ++p) {
    const auto src = mu.source_values();
    const Point back = (k - p - 1) * diag;
    std::vector<int> next(cells.size(), 0);
    std::vector<bool> fixed(cells.size(), false);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (auto j = tile.index_of(cells[i] + diag)) {
        next[i] = src[*j];
        fixed[i] = true;
      } else if (auto j2 = tile.index_of(cells[i] - back)) {
        next[i] = target[*j2];
        fixed[i] = true;
      }
    }
    if (!fixed[corner]) {
      long long s = 0;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (i != corner) s += static_cast<long long>(data.w[i]) * next[i];
      next[corner] = reduce(static_cast<long long>(inverse) * reduce(data.t - s, data.q), data.q);
    }
    // The unique (1,1) path from src to next: T and T + (1,1) are given, the
    // two remaining cells are forced by the placements T + e1 and T + e2.
    Path nu(g.tile_ptr(), diag);
    for (std::size_t i = 0; i < cells.size(); ++i) nu.set(cells[i], src[i]);
    for (std::size_t i = 0; i < cells.size(); ++i) nu.set(cells[i] + diag, next[i]);
    for (Point step : {kE1, kE2}) {
      const Point c = step == kE1 ? data.corner1() : data.corner2();
      long long s = 0;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] != c) s += static_cast<long long>(data.w[i]) * nu.at(cells[i] + step);
      const int inv = mod_inverse(data.weight(c), data.q);
      nu.set(c + step, reduce(static_cast<long long>(inv) * reduce(data.t - s, data.q), data.q));
    }
    if (!is_valid_path(data, nu)) throw Error(ErrorCode::TheoremViolation, "diagonal step is not a path");
    mu = compose_paths(data, mu, nu);
  }
  if (!is_valid_path(data, mu) || g.range(mu) != v || g.source(mu) != u)
    throw Error(ErrorCode::TheoremViolation, "connecting path has the wrong endpoints");
  return mu;
}

// ---------------------------------------------------------------------------
// Aperiodicity

bool separates(const Path& lambda, Point m, Point n) {
  const Point top = join(m, n);
  const Point d = lambda.degree();
  if (!leq(top, d)) return false;
  const Point len = d - top;
  return segment(lambda, m, m + len) != segment(lambda, n, n + len);
}

namespace {

Path extend_by_first_edges(const Graph& g, Path mu, Point d) {
  for (int i = 0; i < d.x; ++i) mu = compose_paths(g.data(), mu, g.edges_with_range(g.source(mu), true).front().path);
  for (int i = 0; i < d.y; ++i) mu = compose_paths(g.data(), mu, g.edges_with_range(g.source(mu), false).front().path);
  return mu;
}

std::optional<Path> construct_witness(const Graph& g, std::size_t v, Point m, Point n) {
  const BasicData& data = g.data();
  const Point top = join(m, n);
  const Path mu = extend_by_first_edges(g, g.vertex_path(v), top);
  if (separates(mu, m, n)) return mu;
  if (leq(m, n) || leq(n, m)) {
    const Point lo = leq(m, n) ? m : n;
    const Point hi = leq(m, n) ? n : m;
    const bool blue = lo.x < hi.x;
    const Point step = blue ? kE1 : kE2;
    const Path old = segment(mu, lo, lo + step);
    for (const auto& e : g.edges_with_range(g.source(mu), blue)) {
      if (e.path == old) continue;
      Path lambda = compose_paths(data, mu, e.path);
      if (separates(lambda, m, n)) return lambda;
      break;
    }
    return std::nullopt;
  }
  Point a = m;
  Point b = n;
  if (a.x < b.x) std::swap(a, b);
  const auto zero = g.index_of(std::vector<int>(data.tile.size(), 0));
  if (!zero) return std::nullopt;
  std::optional<Edge> beta;
  for (auto& e : g.edges_with_source(*zero, true))
    if (e.range != *zero) {
      beta = std::move(e);
      break;
    }
  if (!beta) return std::nullopt;
  const Path alpha = connect_vertices(g, g.source(mu), beta->range);
  Path lambda = compose_paths(data, compose_paths(data, mu, alpha), beta->path);
  const Point pad = top - meet(a, b) - kE1;
  lambda = compose_paths(data, lambda, Path(g.tile_ptr(), pad));
  if (separates(lambda, m, n)) return lambda;
  return std::nullopt;
}

}  // namespace

AperiodicityReport aperiodicity_witness(const Graph& g, std::size_t v, Point m, Point n, std::optional<Point> bound,
                                        bool allow_construction) {
  if (m == n) throw Error(ErrorCode::InvalidInput, "m and n must differ");
  if (!nonnegative(m) || !nonnegative(n)) throw Error(ErrorCode::NegativeDegree, "m and n must be >= 0");
  const BasicData& data = g.data();
  const Point top = join(m, n);
  AperiodicityReport r;
  r.vertex = v;
  r.m = m;
  r.n = n;
  r.bound = bound.value_or(top + Point{3, 3});
  const auto flags = validate_basic_data(data);
  if (allow_construction && data.t == 0 && flags.three_invertible_corners) {
    if (auto w = construct_witness(g, v, m, n)) {
      r.status = WitnessStatus::Found;
      r.witness = std::move(w);
      r.constructive = true;
      return r;
    }
  }
  // Exhaustive search by increasing total degree.
  for (int total = top.x + top.y; total <= r.bound.x + r.bound.y; ++total) {
    for (int dx = top.x; dx <= r.bound.x; ++dx) {
      const int dy = total - dx;
      if (dy < top.y || dy > r.bound.y) continue;
      for (auto& lambda : g.paths_from(v, {dx, dy})) {
        if (separates(lambda, m, n)) {
          r.status = WitnessStatus::Found;
          r.witness = std::move(lambda);
          return r;
        }
      }
    }
  }
  const DiagonalScanReport scan = diagonal_periodicity_scan(g, r.bound);
  if (scan.certified) {
    r.diagnostic = scan.diagnostic;
    const Point diff = m - n;
    r.periodicity_proved = scan.covers_all_degrees && (diff == Point{-1, 1} || diff == Point{1, -1});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Trace shift and simplicity hypotheses

TraceShiftReport trace_shift_isomorphism(const BasicData& data, int c, std::size_t vertex_limit) {
  long long total = 0;
  for (int v : data.w) total += v;
  if (reduce(static_cast<long long>(c) * total, data.q) != data.t)
    throw Error(ErrorCode::ConstantNotValid, std::to_string(c) + " * sum(w) is not t mod " + std::to_string(data.q));
  BasicData zero_data = data;
  zero_data.t = 0;
  const Graph g0(zero_data, vertex_limit);
  const Graph gt(data, vertex_limit);
  TraceShiftReport r;
  r.c = reduce(c, data.q);
  r.vertices = g0.vertex_count();
  auto shift = [&](std::vector<int> values) {
    for (auto& v : values) v = reduce(v + r.c, data.q);
    return values;
  };
  bool ok = g0.vertex_count() == gt.vertex_count();
  std::vector<std::size_t> image(g0.vertex_count());
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < g0.vertex_count() && ok; ++i) {
    auto idx = gt.index_of(shift(g0.vertex_values(i)));
    ok = idx.has_value();
    if (ok) {
      image[i] = *idx;
      seen.insert(*idx);
    }
  }
  ok = ok && seen.size() == gt.vertex_count();
  for (bool blue : {true, false}) {
    std::set<std::pair<std::size_t, std::size_t>> images;
    std::size_t count = 0;
    std::size_t target_count = 0;
    for (std::size_t u = 0; u < g0.vertex_count() && ok; ++u) {
      for (const auto& e : g0.edges_with_range(u, blue)) {
        ++count;
        Path shifted = e.path;
        for (int x = 0; x < shifted.width(); ++x)
          for (int y = 0; y < shifted.height(); ++y)
            if (shifted.in_domain({x, y})) shifted.set({x, y}, reduce(shifted.at({x, y}) + r.c, data.q));
        if (!is_valid_path(data, shifted)) {
          ok = false;
          break;
        }
        const std::size_t ir = gt.range(shifted);
        const std::size_t is = gt.source(shifted);
        ok = ok && ir == image[e.range] && is == image[e.source];
        images.insert({ir, is});
      }
    }
    for (std::size_t u = 0; u < gt.vertex_count(); ++u)
      target_count += (blue ? gt.matrices().blue_sources[u] : gt.matrices().red_sources[u]).size();
    ok = ok && images.size() == count && count == target_count;
    (blue ? r.blue_edges : r.red_edges) = count;
  }
  r.bijective = ok;
  return r;
}

SimplicityReport simplicity_hypotheses(const BasicData& data, std::size_t vertex_limit) {
  SimplicityReport r;
  const auto flags = validate_basic_data(data);
  r.c1_positive = data.tile.c1() >= 1;
  r.c2_positive = data.tile.c2() >= 1;
  r.trace_ok = data.t == 0 || flags.trace_shift_constant.has_value();
  r.three_invertible_corners = flags.three_invertible_corners;
  if (!flags.invertible_corners) {
    r.notes.push_back("corner weights are not units; the graph is not defined");
    return r;
  }
  const Graph g(data, vertex_limit);
  const SkeletonReport sk = check_skeleton(g);
  if (!r.c2_positive && sk.blue_is_permutation)
    r.notes.push_back("blue graph consists of disjoint cycles (vertex matrix B is a permutation)");
  if (!r.c1_positive) {
    bool red_perm = true;
    for (const auto& row : g.matrices().red_sources) red_perm = red_perm && row.size() == 1;
    if (red_perm) r.notes.push_back("red graph consists of disjoint cycles (vertex matrix R is a permutation)");
  }
  if (!r.three_invertible_corners) r.notes.push_back("three invertible corners fails");
  if (!r.all_hold()) return r;
  const std::size_t v = 0;
  const auto into = g.edges_with_range(v, true);
  if (into.size() < 2) throw Error(ErrorCode::TheoremViolation, "vertex receives fewer than two blue edges");
  const Path nu = connect_vertices(g, into[0].source, v);
  Path loop = compose_paths(data, into[0].path, nu);
  if (g.range(loop) != v || g.source(loop) != v) throw Error(ErrorCode::TheoremViolation, "loop is not closed");
  r.loop_vertex = v;
  r.loop = std::move(loop);
  r.entrance = into[1].path;
  return r;
}

}  // namespace tilegraph
