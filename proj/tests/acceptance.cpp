// Runs each acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "tilegraph/error.hpp"
#include "tilegraph/graph.hpp"
#include "tilegraph/ktheory.hpp"
#include "tilegraph/subshift.hpp"
#include "tilegraph/table_data.hpp"

using namespace tilegraph;
using zlin::Integer;
using zlin::IntegerMatrix;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures for one criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << count_ << " failure(s)";
    for (const auto& f : failures_) s << "; " << f;
    return s.str();
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

struct TableResult {
  TableCell cell;
  std::optional<KTheoryReport> report;
  std::string error;
  double seconds = 0;
};

std::vector<TableResult> compute_table() {
  const auto& cells = reference_table();
  std::vector<TableResult> out(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      out[i].cell = cells[i];
      const auto start = Clock::now();
      try {
        out[i].report = compute_k_groups(make_basic_data(parse_tile(cells[i].rows), cells[i].q), 1u << 12);
      } catch (const Error& e) {
        out[i].error = e.what();
      }
      out[i].seconds = seconds_since(start);
    }
  };
  const unsigned workers = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

std::string cell_name(const TableCell& c) { return "[" + parse_tile(c.rows).to_string() + "]/q=" + std::to_string(c.q); }

bool report(int number, const std::string& title, const Check& check, const std::string& detail) {
  std::cout << (check.ok() ? "PASS" : "FAIL") << "  criterion " << number << " (" << title << "): "
            << (check.ok() ? detail : check.summary()) << std::endl;
  return check.ok();
}

// 1. The Ledrappier graph against reference vertex matrices.
bool ledrappier() {
  const auto start = Clock::now();
  Check c;
  const int blue[4][4] = {{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}};
  const int red[4][4] = {{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 0, 0}};
  const Graph g(make_basic_data(parse_tile_text("2,1"), 2));
  c.require(g.vertex_count() == 4, "vertex count " + std::to_string(g.vertex_count()));
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
  std::size_t matching = 0;
  do {
    bool same = true;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        same = same && g.matrices().B(perm[i], perm[j]) == blue[i][j] && g.matrices().R(perm[i], perm[j]) == red[i][j];
    matching += same;
  } while (std::next_permutation(perm.begin(), perm.end()));
  c.require(matching > 0, "no permutation matches the reference B and R");
  const auto k = compute_k_groups(g);
  c.require(k.K0.is_trivial(), "K0 = " + k.K0.to_string());
  c.require(k.K1.is_trivial(), "K1 = " + k.K1.to_string());
  const double t = seconds_since(start);
  c.require(t < 1.0, "took " + std::to_string(t) + " s");
  std::ostringstream d;
  d << "4 vertices, B and R match under " << matching << " of 24 permutations, K0 = K1 = 0, " << t << " s";
  return report(1, "Ledrappier end to end", c, d.str());
}

// 2. Every stored cell reproduced exactly.
bool table(const std::vector<TableResult>& results, double total) {
  Check c;
  double slowest = 0;
  std::string slowest_name;
  std::size_t largest = 0;
  for (const auto& r : results) {
    const Integer expected(static_cast<unsigned long long>(r.cell.order));
    if (!r.report) {
      c.require(false, cell_name(r.cell) + ": " + r.error);
      continue;
    }
    const auto k0 = r.report->K0.order();
    const auto k1 = r.report->K1.order();
    c.require(k0 && *k0 == expected, cell_name(r.cell) + " |K0| = " + (k0 ? k0->to_string() : "inf"));
    c.require(k1 && *k1 == expected, cell_name(r.cell) + " |K1| = " + (k1 ? k1->to_string() : "inf"));
    c.require(r.seconds < 600, cell_name(r.cell) + " took " + std::to_string(r.seconds) + " s");
    largest = std::max(largest, r.report->vertices);
    if (r.seconds > slowest) {
      slowest = r.seconds;
      slowest_name = cell_name(r.cell);
    }
  }
  std::ostringstream d;
  d << results.size() << " cells match, largest " << largest << " vertices, slowest " << slowest_name << " in "
    << slowest << " s, " << total << " s total";
  return report(2, "table reproduction", c, d.str());
}

BasicData random_valid_data(std::mt19937_64& rng) {
  while (true) {
    const int c1 = 1 + static_cast<int>(rng() % 4);
    std::vector<int> rows{c1 + 1};
    while (rows.size() < 4 && rng() % 3 != 0) rows.push_back(1 + static_cast<int>(rng() % rows.back()));
    if (rows.size() < 2) rows.push_back(1 + static_cast<int>(rng() % rows.back()));
    const Tile t = parse_tile(rows);
    const int q = 2 + static_cast<int>(rng() % 3);
    if (std::pow(q, static_cast<double>(t.size() - 1)) > 1024) continue;
    std::vector<int> w(t.size());
    for (auto& v : w) v = static_cast<int>(rng() % q);
    BasicData data = make_basic_data(t, q, 0, w);
    const auto flags = validate_basic_data(data);
    const auto h = hypothesis_flags(data);
    if (!flags.three_invertible_corners || !(h.h0_gt_h1 || h.w0_gt_w1)) continue;
    BasicData shifted = make_basic_data(t, q, static_cast<long long>(rng() % q), w);
    return validate_basic_data(shifted).trace_shift_constant ? shifted : data;
  }
}

// 3. Kernel and order results, skeleton properties, two determinant identities.
bool theorems(const std::vector<TableResult>& results) {
  Check c;
  std::size_t instances = 0;
  auto check_instance = [&](const std::string& name, const KTheoryReport& k) {
    ++instances;
    c.require(k.ker_delta2_rank == 0, name + ": ker delta2 has rank " + std::to_string(k.ker_delta2_rank));
    const auto k0 = k.K0.order();
    const auto k1 = k.K1.order();
    c.require(k0.has_value() == k1.has_value() && (!k0 || *k0 == *k1), name + ": |K0| != |K1|");
  };
  for (const auto& r : results) {
    if (!r.report) continue;
    const BasicData data = make_basic_data(parse_tile(r.cell.rows), r.cell.q);
    if (!validate_basic_data(data).three_invertible_corners) continue;
    check_instance(cell_name(r.cell), *r.report);
  }
  std::size_t random_sets = 0;
  std::size_t graphs = 0;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const BasicData data = random_valid_data(rng);
    const Graph g(data);
    const auto k = compute_k_groups(g);
    check_instance(data.describe(), k);
    ++random_sets;
    const auto sk = check_skeleton(g);
    c.require(sk.ok(), data.describe() + ": skeleton check fails");
    ++graphs;
  }
  for (const auto& r : results) {
    const BasicData data = make_basic_data(parse_tile(r.cell.rows), r.cell.q);
    if (std::pow(r.cell.q, static_cast<double>(data.tile.size() - 1)) > 1024) continue;
    const Graph g(data);
    c.require(check_skeleton(g).ok(), cell_name(r.cell) + ": skeleton check fails");
    ++graphs;
  }

  for (std::size_t n = 2; n <= 12; ++n) {
    IntegerMatrix one_minus(n, n);
    IntegerMatrix minus_one(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        one_minus(i, j) = (i == j ? 1 : 0) - 1;
        minus_one(i, j) = 1 - (i == j ? 1 : 0);
      }
    const long long m = static_cast<long long>(n) - 1;
    const Integer sign_m((n % 2 == 1) ? m : -m);
    c.require(zlin::determinant(one_minus) == Integer(-m), "det(1 - K^t) for n = " + std::to_string(n));
    c.require(zlin::determinant(minus_one) == sign_m, "det(K^t - 1) for n = " + std::to_string(n));
    c.require(zlin::circulant_det_check(n) == Integer(-m), "circulant check for n = " + std::to_string(n));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    const long long scale = trial % 2 == 0 ? 2 : 3;
    IntegerMatrix a = IntegerMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rng() % 2) a(j, i) -= scale;
    c.require(zlin::rank(a) == n, "ker(1 - n B^t) is not trivial");
  }
  std::ostringstream d;
  d << instances << " instances (" << random_sets << " random) with ker delta2 = 0 and |K0| = |K1|, " << graphs
    << " skeletons, det(1 - K^t) = -(n - 1) and det(K^t - 1) = (-1)^(n-1) (n - 1) for n = 2..12, "
    << "50 matrices 1 - n B^t injective";
  return report(3, "structural results", c, d.str());
}

// 4. Composition and factorization on the Ledrappier graph.
bool composition() {
  const auto start = Clock::now();
  Check c;
  const BasicData data = make_basic_data(parse_tile_text("2,1"), 2);
  const Graph g(data);
  std::vector<Point> degrees;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y) degrees.push_back({x, y});
  std::map<std::pair<int, int>, std::vector<Path>> by_degree;
  for (Point d : degrees)
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (auto& p : g.paths_from(v, d)) by_degree[{d.x, d.y}].push_back(std::move(p));
  auto paths = [&](Point d) -> const std::vector<Path>& { return by_degree[{d.x, d.y}]; };

  std::size_t factorizations = 0;
  std::size_t compositions = 0;
  for (Point d : degrees)
    for (const Path& lambda : paths(d))
      for (Point m : degrees) {
        if (!leq(m, d)) continue;
        const auto [head, tail] = factorize_path(lambda, m);
        c.require(compose_paths(data, head, tail) == lambda, "compose(factorize(lambda)) != lambda");
        ++factorizations;
      }
  for (Point d : degrees)
    for (Point m : degrees) {
      if (!leq(m, d)) continue;
      for (const Path& mu : paths(m))
        for (const Path& nu : paths(d - m)) {
          if (g.source(mu) != g.range(nu)) continue;
          const Path lambda = compose_paths(data, mu, nu);
          c.require(is_valid_path(data, lambda), "composite is not a path");
          const auto [head, tail] = factorize_path(lambda, m);
          c.require(head == mu && tail == nu, "factorize(compose(mu, nu)) != (mu, nu)");
          ++compositions;
        }
    }
  std::size_t triples = 0;
  const std::vector<Point> small = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (Point a : small)
    for (Point b : small)
      for (Point e : small)
        for (const Path& x : paths(a))
          for (const Path& y : paths(b)) {
            if (g.source(x) != g.range(y)) continue;
            const Path xy = compose_paths(data, x, y);
            for (const Path& z : paths(e)) {
              if (g.source(y) != g.range(z)) continue;
              c.require(compose_paths(data, xy, z) == compose_paths(data, x, compose_paths(data, y, z)),
                        "composition is not associative");
              ++triples;
            }
          }
  const Path example = path_from_rows(g.tile_ptr(), {3, 2}, {"00110", "01011", "11101", "0011"});
  c.require(is_valid_path(data, example), "the degree (3,2) grid is not a path");
  for (int mx = 0; mx <= 3; ++mx)
    for (int my = 0; my <= 2; ++my) {
      const auto [head, tail] = factorize_path(example, {mx, my});
      c.require(is_valid_path(data, head) && is_valid_path(data, tail), "factor of the (3,2) grid is not a path");
      const Path back = compose_paths(data, head, tail);
      c.require(back == example && back.to_string() == example.to_string(), "(3,2) grid does not recompose");
    }
  const double t = seconds_since(start);
  c.require(t < 10, "took " + std::to_string(t) + " s");
  std::ostringstream d;
  d << factorizations << " factorizations, " << compositions << " compositions, " << triples
    << " associative triples, (3,2) grid factors at all 12 degrees, " << t << " s";
  return report(4, "composition and factorization", c, d.str());
}

// 5. Aperiodicity witnesses and the periodic sock.
bool aperiodicity() {
  Check c;
  const Graph g(make_basic_data(parse_tile_text("2,1"), 2));
  std::size_t triples = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (int mx = 0; mx <= 2; ++mx)
      for (int my = 0; my <= 2; ++my)
        for (int nx = 0; nx <= 2; ++nx)
          for (int ny = 0; ny <= 2; ++ny) {
            const Point m{mx, my};
            const Point n{nx, ny};
            if (m == n) continue;
            const auto direct = aperiodicity_witness(g, v, m, n);
            const auto search = aperiodicity_witness(g, v, m, n, Point{3, 3}, false);
            const std::string name = "v=" + std::to_string(v) + " m=" + to_string(m) + " n=" + to_string(n);
            c.require(direct.witness && g.range(*direct.witness) == v && separates(*direct.witness, m, n),
                      name + " direct");
            c.require(search.witness && g.range(*search.witness) == v && separates(*search.witness, m, n),
                      name + " search");
            ++triples;
          }
  const Graph periodic(make_basic_data(parse_tile_text("2,1"), 2, 0, {0, 1, 1}));
  const auto scan = diagonal_periodicity_scan(periodic);
  c.require(scan.certified && scan.covers_all_degrees, "scan does not certify the w(0) = 0 sock");
  for (std::size_t v = 0; v < periodic.vertex_count(); ++v) {
    const auto r = aperiodicity_witness(periodic, v, kE2, kE1);
    c.require(!r.witness && r.periodicity_proved, "w(0) = 0 sock has a witness at vertex " + std::to_string(v));
  }
  std::ostringstream d;
  d << triples << " triples (v, m, n) separated both directly and by search up to (3,3); w(0) = 0 sock: "
    << scan.diagnostic << " on " << periodic.vertex_count() << " vertices";
  return report(5, "aperiodicity", c, d.str());
}

// 6. Reduction chain for [4,3,1,1] and the sock.
bool reduction() {
  Check c;
  const auto chain = reduction_chain(make_basic_data(parse_tile_text("4,3,1,1"), 2));
  std::vector<std::string> tiles;
  for (const auto& t : chain.tiles) tiles.push_back(t.to_string());
  c.require(tiles == std::vector<std::string>{"3,2,1", "2,1,1", "1,1"}, "chain tiles");
  c.require(chain.multipliers == std::vector<Integer>{2, 1, 2}, "chain multipliers");
  c.require(chain.all_verified(), "dual description not verified");
  std::size_t edges = 0;
  for (const auto& s : chain.steps) edges += s.class_edges;
  const auto sock = reduction_chain(make_basic_data(parse_tile_text("2,1"), 2));
  c.require(sock.tiles.size() == 1 && sock.tiles[0].to_string() == "1,1", "sock chain tile");
  c.require(sock.final_vertices == 2 && sock.final_complete, "sock does not end in the complete graph on 2 vertices");
  c.require(sock.all_verified(), "sock step not verified");
  std::ostringstream d;
  d << "[4,3,1,1] -> [3,2,1], [2,1,1], [1,1] with multipliers 2, 1, 2, " << chain.steps.size()
    << " steps verified on vertices and edges (" << edges << " quotient edges); sock ends in the complete graph on 2 vertices";
  return report(6, "dual reduction", c, d.str());
}

// 7. Paths against windows.
bool correspondence() {
  Check c;
  std::size_t degrees = 0;
  std::size_t items = 0;
  for (auto [rows, q] : std::vector<std::pair<const char*, int>>{{"2,1", 2}, {"2,1", 3}, {"3", 2}}) {
    const Graph g(make_basic_data(parse_tile_text(rows), q));
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; y <= 2; ++y) {
        const auto r = path_window_correspondence(g, {x, y});
        c.require(r.ok(), std::string(rows) + "/q=" + std::to_string(q) + " at " + to_string(Point{x, y}));
        ++degrees;
        items += r.paths;
      }
  }
  std::ostringstream d;
  d << degrees << " degrees, " << items << " paths matched one to one with windows";
  return report(7, "subshift correspondence", c, d.str());
}

// 8. Unit class generates when c2 >= 1 and K0 is nontrivial.
bool unit_class(const std::vector<TableResult>& results) {
  Check c;
  std::size_t checked = 0;
  for (const auto& r : results) {
    if (!r.report || r.cell.rows.size() < 2) continue;
    const auto order = r.report->K0.order();
    if (!order || *order == Integer(1)) continue;
    c.require(unit_class_is_generator(*r.report), cell_name(r.cell) + ": unit class has order " +
                                                      (r.report->unit.order ? r.report->unit.order->to_string() : "inf"));
    ++checked;
  }
  std::ostringstream d;
  d << "unit class generates coker delta1 in all " << checked << " cells with c2 >= 1 and K0 != 0";
  return report(8, "unit class", c, d.str());
}

bool guarded(int number, const std::function<bool()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    std::cout << "FAIL  criterion " << number << ": " << e.what() << std::endl;
    return false;
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= guarded(1, ledrappier);
  const auto start = Clock::now();
  std::vector<TableResult> results;
  const double total = (results = compute_table(), seconds_since(start));
  ok &= guarded(2, [&] { return table(results, total); });
  ok &= guarded(3, [&] { return theorems(results); });
  ok &= guarded(4, composition);
  ok &= guarded(5, aperiodicity);
  ok &= guarded(6, reduction);
  ok &= guarded(7, correspondence);
  ok &= guarded(8, [&] { return unit_class(results); });
  std::cout << (ok ? "all criteria pass" : "some criteria fail") << std::endl;
  return ok ? 0 : 1;
}
