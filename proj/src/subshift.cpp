#include "tilegraph/subshift.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "tilegraph/error.hpp"

namespace tilegraph {

std::optional<int> WindowConfiguration::at(Point absolute) const {
  const Point local = absolute - base;
  if (!values.in_domain(local)) return std::nullopt;
  return values.at(local);
}

bool is_valid_window(const BasicData& data, const WindowConfiguration& conf) {
  if (data.t != 0) return false;
  return is_valid_path(data, conf.values);
}

WindowConfiguration sample_window(const Graph& g, Point extent, std::uint64_t seed) {
  const BasicData& data = g.data();
  if (data.t != 0) throw Error(ErrorCode::TraceNonZero, "windows are sampled for trace 0 only");
  if (!nonnegative(extent)) throw Error(ErrorCode::NegativeDegree, "extent " + to_string(extent));
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  Path mu = g.vertex_path(pick(g.vertex_count()));
  for (int i = 0; i < extent.x + extent.y; ++i) {
    const bool blue = i < extent.x;
    const auto& row = (blue ? g.matrices().blue_sources : g.matrices().red_sources)[g.source(mu)];
    const std::size_t choice = row[pick(row.size())];
    mu = compose_paths(data, mu, g.edge(g.source(mu), choice, blue).path);
  }
  return {{0, 0}, std::move(mu)};
}

WindowConfiguration sample_window(const BasicData& data, Point extent, std::uint64_t seed) {
  if (data.t != 0) throw Error(ErrorCode::TraceNonZero, "windows are sampled for trace 0 only");
  return sample_window(Graph(data), extent, seed);
}

WindowConfiguration shift_window(const WindowConfiguration& conf, Point p) {
  return {conf.base - p, conf.values};
}

WindowConfiguration restrict_window(const WindowConfiguration& conf, Point base, Point extent) {
  const Point offset = base - conf.base;
  if (!nonnegative(offset) || !nonnegative(extent) || !leq(offset + extent, conf.extent()))
    throw Error(ErrorCode::DegreeOutOfRange, "sub-window does not fit");
  return {base, segment(conf.values, offset, offset + extent)};
}

namespace {

// Reassembles a filling of T(n) from its vertices by composing edges: first
// along the bottom row of translates, then up the last column.
Path reassemble(const Graph& g, const Path& filling) {
  const BasicData& data = g.data();
  const Point n = filling.degree();
  Path mu = g.vertex_path(g.require_index(filling.restrict_at({0, 0})));
  Point at{0, 0};
  for (int i = 0; i < n.x + n.y; ++i) {
    const bool blue = i < n.x;
    const Point next = at + (blue ? kE1 : kE2);
    const std::size_t r = g.require_index(filling.restrict_at(at));
    const std::size_t s = g.require_index(filling.restrict_at(next));
    const auto& row = (blue ? g.matrices().blue_sources : g.matrices().red_sources)[r];
    if (!std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(s)))
      throw Error(ErrorCode::CountMismatch, "neighbouring translates are not joined by an edge");
    mu = compose_paths(data, mu, g.edge(r, s, blue).path);
    at = next;
  }
  return mu;
}

// Filling read back from a path through its vertices lambda(m, m).
Path flatten(const Path& lambda) {
  Path f(lambda.tile_ptr(), lambda.degree());
  const Tile& tile = lambda.tile();
  for (int x = 0; x < f.width(); ++x)
    for (int y = 0; y < f.height(); ++y) {
      if (!f.in_domain({x, y})) continue;
      const Point m{std::min(x, lambda.degree().x), std::min(y, lambda.degree().y)};
      const Point cell = Point{x, y} - m;
      if (!tile.contains(cell)) throw Error(ErrorCode::CountMismatch, "cell outside every translate");
      f.set({x, y}, segment(lambda, m, m).at(cell));
    }
  return f;
}

}  // namespace

CorrespondenceReport path_window_correspondence(const Graph& g, Point n) {
  const BasicData& data = g.data();
  if (data.t != 0) throw Error(ErrorCode::TraceNonZero, "the correspondence is stated for trace 0");
  CorrespondenceReport r;
  r.degree = n;
  std::set<std::vector<int>> from_paths;
  bool inverse = true;
  bool consistent = true;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (const auto& lambda : g.paths_from(v, n)) {
      ++r.paths;
      const Path f = flatten(lambda);
      inverse = inverse && f == lambda && reassemble(g, f) == lambda;
      from_paths.insert(f.grid());
      for (int ix = 0; ix <= n.x && consistent; ++ix)
        for (int iy = 0; iy <= n.y && consistent; ++iy)
          for (Point j : lambda.tile().cells()) {
            const Point i{ix, iy};
            if (!leq(j, i)) continue;
            consistent = consistent && segment(lambda, i, i).at({0, 0}) == segment(lambda, i - j, i - j).at(j);
          }
    }
  }
  auto tile = g.tile_ptr();
  enumerate_fillings(data, n, [&](const std::vector<int>& grid) {
    ++r.windows;
    Path f(tile, n);
    for (int x = 0; x < f.width(); ++x)
      for (int y = 0; y < f.height(); ++y) f.set({x, y}, grid[static_cast<std::size_t>(y) * f.width() + x]);
    const Path lambda = reassemble(g, f);
    inverse = inverse && flatten(lambda) == f && from_paths.count(f.grid()) == 1;
    return true;
  });
  r.counts_equal = r.paths == r.windows && from_paths.size() == r.paths;
  r.maps_inverse = inverse;
  r.segments_consistent = consistent;
  if (!r.counts_equal)
    throw Error(ErrorCode::CountMismatch, std::to_string(r.paths) + " paths against " + std::to_string(r.windows) +
                                              " windows at degree " + to_string(n));
  return r;
}

DiagonalScanReport diagonal_periodicity_scan(const Graph& g, Point bound) {
  DiagonalScanReport r;
  const Tile& tile = *g.tile_ptr();
  const Point step{1, -1};
  for (Point a : tile.cells())
    if (tile.contains(a + step)) r.pairs.push_back({a, a + step});
  if (r.pairs.empty()) {
    r.diagnostic = "no diagonal pairs in the tile";
    return r;
  }
  for (std::size_t v = 0; v < g.vertex_count() && !r.violating_vertex; ++v) {
    const auto values = g.vertex_values(v);
    for (const auto& [a, b] : r.pairs)
      if (values[*tile.index_of(a)] != values[*tile.index_of(b)]) {
        r.violating_vertex = v;
        break;
      }
  }
  r.certified = !r.violating_vertex;
  if (!r.certified) {
    r.diagnostic = "vertex " + std::to_string(*r.violating_vertex) + " differs along a short diagonal";
    return r;
  }
  r.covers_all_degrees = true;
  for (int dx = 0; dx <= bound.x; ++dx)
    for (int dy = 0; dy <= bound.y; ++dy) {
      const Region region(tile, {dx, dy});
      for (Point p : region.cells()) {
        if (!region.contains(p + step)) continue;
        bool inside = false;
        for (int mx = 0; mx <= dx && !inside; ++mx)
          for (int my = 0; my <= dy && !inside; ++my)
            inside = tile.contains(p - Point{mx, my}) && tile.contains(p + step - Point{mx, my});
        r.covers_all_degrees = r.covers_all_degrees && inside;
      }
    }
  r.diagnostic = "constant along the short diagonals";
  return r;
}

}  // namespace tilegraph
