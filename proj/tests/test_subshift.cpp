#include <doctest.h>

#include <random>
#include <set>

#include "tilegraph/error.hpp"
#include "tilegraph/graph.hpp"
#include "tilegraph/subshift.hpp"

using namespace tilegraph;

namespace {

BasicData basic(const char* rows, int q, long long t = 0, std::vector<int> w = {}) {
  return make_basic_data(parse_tile_text(rows), q, t, std::move(w));
}

// Oracle: weighted sum over every translate of the tile inside the window.
bool window_satisfies_rule(const BasicData& data, const WindowConfiguration& conf) {
  const Point e = conf.extent();
  const Region region(data.tile, e);
  for (Point p : region.cells())
    if (!conf.at(conf.base + p)) return false;
  for (int mx = 0; mx <= e.x; ++mx)
    for (int my = 0; my <= e.y; ++my) {
      long long s = 0;
      for (std::size_t i = 0; i < data.tile.size(); ++i)
        s += static_cast<long long>(data.w[i]) * *conf.at(conf.base + data.tile.cells()[i] + Point{mx, my});
      if (reduce(s, data.q) != 0) return false;
    }
  return true;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("sampled windows are valid and reproducible") {
  for (auto [rows, q] : std::vector<std::pair<const char*, int>>{{"2,1", 2}, {"2,1", 5}, {"3,1", 3}, {"3,2,1", 2}}) {
    const Graph g(basic(rows, q));
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      for (Point e : {Point{0, 0}, Point{3, 2}, Point{1, 4}, Point{5, 5}}) {
        const auto w = sample_window(g, e, seed);
        CHECK(w.extent() == e);
        CHECK(is_valid_window(g.data(), w));
        CHECK(window_satisfies_rule(g.data(), w));
        CHECK(w == sample_window(g, e, seed));
      }
  }
  const auto data = basic("2,1", 3);
  CHECK(sample_window(data, {4, 4}, 9) == sample_window(Graph(data), {4, 4}, 9));
  std::set<std::vector<std::string>> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) seen.insert(sample_window(data, {2, 2}, seed).grid_lines());
  CHECK(seen.size() > 1);
  CHECK(code_of([] { sample_window(basic("2,1", 2, 1), {1, 1}, 0); }) == ErrorCode::TraceNonZero);
}

TEST_CASE("window validity") {
  const auto data = basic("2,1", 2);
  const auto tile = std::make_shared<const Tile>(data.tile);
  WindowConfiguration zero{{0, 0}, Path(tile, {3, 2})};
  CHECK(is_valid_window(data, zero));
  CHECK(Region(data.tile, {3, 2}).size() == 19);
  WindowConfiguration broken = zero;
  broken.values.set({1, 1}, 1);
  CHECK_FALSE(is_valid_window(data, broken));
  CHECK_FALSE(window_satisfies_rule(data, broken));

  std::size_t count = 0;
  enumerate_fillings(data, {1, 1}, [&](const std::vector<int>&) { return ++count > 0; });
  CHECK(count == 16);
}

TEST_CASE("shifts compose and restrict to path segments") {
  const Graph g(basic("2,1", 2));
  const auto w = sample_window(g, {4, 3}, 17);
  CHECK(shift_window(w, {0, 0}) == w);
  CHECK(shift_window(shift_window(w, {1, 2}), {2, -1}) == shift_window(w, {3, 1}));
  const auto s = shift_window(w, {2, 1});
  CHECK(s.at({-2, -1}) == w.at({0, 0}));
  CHECK(s.at({1, 1}) == w.at({3, 2}));

  const Path& lambda = w.values;
  for (Point m : {Point{0, 0}, Point{1, 1}, Point{2, 0}})
    for (Point n : {Point{3, 2}, Point{4, 3}, Point{2, 3}}) {
      if (!leq(m, n)) continue;
      const auto piece = shift_window(restrict_window(w, m, n - m), m);
      CHECK(piece.base == Point{0, 0});
      CHECK(piece.values == segment(lambda, m, n));
    }
  CHECK(code_of([&] { restrict_window(w, {1, 1}, {4, 3}); }) == ErrorCode::DegreeOutOfRange);
}

TEST_CASE("paths and windows correspond") {
  for (int q : {2, 3}) {
    const Graph g(basic("2,1", q));
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; y <= 2; ++y) {
        const auto r = path_window_correspondence(g, {x, y});
        CAPTURE(q);
        CAPTURE(x);
        CAPTURE(y);
        CHECK(r.ok());
        std::size_t expected = g.vertex_count();
        for (int k = 0; k < x + y; ++k) expected *= static_cast<std::size_t>(q);
        CHECK(r.paths == expected);
      }
  }
  const auto line = path_window_correspondence(Graph(basic("3", 2)), {2, 0});
  CHECK(line.ok());
  CHECK(line.paths == 4);
  CHECK(code_of([] { path_window_correspondence(Graph(basic("2,1", 2, 1)), {1, 1}); }) == ErrorCode::TraceNonZero);
}

TEST_CASE("diagonal periodicity scan") {
  const auto zero_origin = diagonal_periodicity_scan(Graph(basic("2,1", 2, 0, {0, 1, 1})));
  CHECK(zero_origin.certified);
  CHECK(zero_origin.covers_all_degrees);
  REQUIRE(zero_origin.pairs.size() == 1);
  CHECK(zero_origin.pairs[0] == std::pair<Point, Point>{{0, 1}, {1, 0}});
  CHECK(zero_origin.diagnostic == "constant along the short diagonals");

  const auto ledrappier = diagonal_periodicity_scan(Graph(basic("2,1", 2)));
  CHECK_FALSE(ledrappier.certified);
  CHECK(ledrappier.violating_vertex.has_value());

  const auto point = diagonal_periodicity_scan(Graph(basic("1", 3)));
  CHECK(point.pairs.empty());
  CHECK_FALSE(point.certified);
  CHECK(point.diagnostic == "no diagonal pairs in the tile");
}
