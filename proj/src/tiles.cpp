#include "tilegraph/tiles.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>
#include <tuple>

#include "tilegraph/error.hpp"

namespace tilegraph {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::InvalidInput, "bad " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string to_string(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

Point parse_point(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw Error(ErrorCode::InvalidInput, "expected a point a,b: '" + std::string(text) + "'");
  return {static_cast<int>(parse_int(parts[0], "coordinate")), static_cast<int>(parse_int(parts[1], "coordinate"))};
}

Tile::Tile(std::vector<int> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorCode::EmptyRows, "a tile needs at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) throw Error(ErrorCode::RowsNotDecreasing, "row lengths must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1])
      throw Error(ErrorCode::RowsNotDecreasing, "row " + std::to_string(i) + " is longer than the row below it");
  }
  const int w = c1() + 1;
  const int h = c2() + 1;
  index_.assign(static_cast<std::size_t>(w) * h, -1);
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y)
      if (contains({x, y})) {
        index_[static_cast<std::size_t>(y) * w + x] = static_cast<int>(cells_.size());
        cells_.push_back({x, y});
      }
}

std::optional<std::size_t> Tile::index_of(Point p) const noexcept {
  if (!contains(p)) return std::nullopt;
  return static_cast<std::size_t>(index_[static_cast<std::size_t>(p.y) * (c1() + 1) + p.x]);
}

std::string Tile::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_.size(); ++i) out += (i ? "," : "") + std::to_string(rows_[i]);
  return out;
}

Tile parse_tile(const std::vector<int>& rows) { return Tile(rows); }

Tile parse_tile_text(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
  if (text.find_first_of("/;|") != std::string_view::npos)
    throw Error(ErrorCode::UnsupportedDimension, "only tiles in N^2 are supported");
  if (trim(text).empty()) throw Error(ErrorCode::EmptyRows, "a tile needs at least one row");
  std::vector<int> rows;
  for (auto part : split(text, ',')) rows.push_back(static_cast<int>(parse_int(part, "row length")));
  return Tile(std::move(rows));
}

std::vector<int> rows_of(const Tile& tile) { return tile.rows(); }

TileMetrics tile_metrics(const Tile& tile) {
  TileMetrics m;
  m.c1 = tile.c1();
  m.c2 = tile.c2();
  m.size = tile.size();
  for (int x = 0; x <= m.c1; ++x) {
    int top = 0;
    while (tile.contains({x, top + 1})) ++top;
    m.h.push_back(top);
  }
  for (int len : tile.rows()) m.wends.push_back(len - 1);
  return m;
}

Tile conjugate_tile(const Tile& tile) {
  const TileMetrics m = tile_metrics(tile);
  std::vector<int> rows;
  for (int top : m.h) rows.push_back(top + 1);
  return Tile(std::move(rows));
}

Region::Region(const Tile& tile, Point degree)
    : rows_(tile.rows()),
      degree_(degree),
      width_(tile.c1() + 1 + degree.x),
      height_(tile.c2() + 1 + degree.y) {
  if (!nonnegative(degree)) throw Error(ErrorCode::NegativeDegree, "degree " + to_string(degree));
  for (int x = 0; x < width_; ++x)
    for (int y = 0; y < height_; ++y)
      if (contains({x, y})) cells_.push_back({x, y});
}

bool Region::contains(Point p) const noexcept {
  if (p.x < 0 || p.y < 0 || p.x >= width_ || p.y >= height_) return false;
  // p lies in some T + m with 0 <= m <= n iff the smallest usable shift works.
  const Point r{std::max(p.x - degree_.x, 0), std::max(p.y - degree_.y, 0)};
  return r.y < static_cast<int>(rows_.size()) && r.x < rows_[r.y];
}

Region region_of_degree(const Tile& tile, Point n) { return Region(tile, n); }

int mod_inverse(int a, int q) {
  if (q < 2) throw Error(ErrorCode::InvalidInput, "modulus must be at least 2");
  const int r = reduce(a, q);
  if (std::gcd(r, q) != 1)
    throw Error(ErrorCode::NotInvertible, std::to_string(a) + " is not a unit mod " + std::to_string(q));
  // Extended Euclid on (r, q).
  long long old_r = r, cur_r = q, old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    const long long quot = old_r / cur_r;
    std::tie(old_r, cur_r) = std::make_pair(cur_r, old_r - quot * cur_r);
    std::tie(old_s, cur_s) = std::make_pair(cur_s, old_s - quot * cur_s);
  }
  return reduce(old_s, q);
}

std::string BasicData::describe() const {
  std::ostringstream os;
  os << "tile [" << tile.to_string() << "] q=" << q << " t=" << t << " w=";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ";" : "") << to_string(tile.cells()[i]) << ":" << w[i];
  return os.str();
}

std::vector<int> parse_rule(std::string_view text, const Tile& tile, int q) {
  text = trim(text);
  if (text.starts_with("w=")) text.remove_prefix(2);
  std::vector<int> w(tile.size(), 1);
  for (auto item : split(text, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const std::size_t colon = item.rfind(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::InvalidInput, "rule entries look like (i,j):v, got '" + std::string(item) + "'");
    const Point cell = parse_point(item.substr(0, colon));
    const auto idx = tile.index_of(cell);
    if (!idx) throw Error(ErrorCode::InvalidInput, "rule cell " + to_string(cell) + " is not in the tile");
    w[*idx] = reduce(parse_int(item.substr(colon + 1), "rule value"), q);
  }
  return w;
}

BasicData make_basic_data(Tile tile, int q, long long t, std::vector<int> w) {
  if (q < 2) throw Error(ErrorCode::InvalidInput, "q must be at least 2");
  if (w.empty()) w.assign(tile.size(), 1);
  if (w.size() != tile.size()) throw Error(ErrorCode::InvalidInput, "rule must give one weight per cell");
  for (auto& v : w) v = reduce(v, q);
  BasicData d;
  d.tile = std::move(tile);
  d.q = q;
  d.t = reduce(t, q);
  d.w = std::move(w);
  return d;
}

BasicDataFlags validate_basic_data(const BasicData& data) {
  BasicDataFlags f;
  const int q = data.q;
  f.invertible_corners =
      std::gcd(data.weight(data.corner1()), q) == 1 && std::gcd(data.weight(data.corner2()), q) == 1;
  f.three_invertible_corners = f.invertible_corners && std::gcd(data.weight({0, 0}), q) == 1 &&
                               data.tile.c1() >= 1 && data.tile.c2() >= 1;
  long long total = 0;
  for (int v : data.w) total += v;
  for (int c = 0; c < q; ++c)
    if (reduce(c * total, q) == data.t) {
      f.trace_shift_constant = c;
      break;
    }
  return f;
}

void require_invertible_corners(const BasicData& data) {
  if (!validate_basic_data(data).invertible_corners)
    throw Error(ErrorCode::CornersNotInvertible,
                "w" + to_string(data.corner1()) + "=" + std::to_string(data.weight(data.corner1())) + ", w" +
                    to_string(data.corner2()) + "=" + std::to_string(data.weight(data.corner2())) +
                    " must be units mod " + std::to_string(data.q));
}

int placement_sum(const BasicData& data, const std::vector<int>& grid, int width, Point offset) {
  long long s = 0;
  const auto& cells = data.tile.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Point p = cells[i] + offset;
    s += static_cast<long long>(data.w[i]) * grid[static_cast<std::size_t>(p.y) * width + p.x];
  }
  return reduce(s, data.q);
}

void enumerate_fillings(const BasicData& data, Point n,
                        const std::function<bool(const std::vector<int>&)>& visit, std::size_t limit) {
  const Region region(data.tile, n);
  const auto& cells = region.cells();
  // Each placement is checked once its canonically last cell is assigned.
  const Point last = data.tile.cells().back();
  std::vector<std::vector<Point>> closing(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Point m = cells[k] - last;
    if (nonnegative(m) && leq(m, n)) closing[k].push_back(m);
  }
  std::vector<int> grid(region.grid_size(), 0);
  std::size_t found = 0;
  bool stop = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (stop) return;
    if (k == cells.size()) {
      if (++found > limit)
        throw Error(ErrorCode::EnumerationTooLarge, "more than " + std::to_string(limit) + " fillings");
      if (!visit(grid)) stop = true;
      return;
    }
    int& slot = grid[region.grid_index(cells[k])];
    for (int v = 0; v < data.q && !stop; ++v) {
      slot = v;
      bool ok = true;
      for (Point m : closing[k]) ok = ok && placement_sum(data, grid, region.width(), m) == data.t;
      if (ok) dfs(k + 1);
    }
    slot = 0;
  };
  dfs(0);
}

}  // namespace tilegraph
