#include "tilegraph/ktheory.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tilegraph/error.hpp"

namespace tilegraph {

using zlin::AbelianGroup;
using zlin::Integer;
using zlin::IntegerMatrix;
using zlin::IntegerVector;

BoundaryMaps build_boundary_maps(const VertexMatrices& m) {
  const std::size_t n = m.n;
  BoundaryMaps out{IntegerMatrix(n, 2 * n), IntegerMatrix(2 * n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.delta1(i, i) = 1;
    out.delta1(i, n + i) = 1;
    out.delta2(i, i) = -1;
    out.delta2(n + i, i) = 1;
  }
  // B(u, v) = 1 puts -1 at (v, u) of 1 - B^t.
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : m.blue_sources[u]) {
      out.delta1(v, u) -= 1;
      out.delta2(n + v, u) -= 1;
    }
    for (auto v : m.red_sources[u]) {
      out.delta1(v, n + u) -= 1;
      out.delta2(v, u) += 1;
    }
  }
  return out;
}

BoundaryMaps build_boundary_maps(const IntegerMatrix& B, const IntegerMatrix& R) {
  const std::size_t n = B.rows();
  if (B.cols() != n || R.rows() != n || R.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "B and R must be square of the same size");
  BoundaryMaps out{IntegerMatrix(n, 2 * n), IntegerMatrix(2 * n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Integer id = i == j ? 1 : 0;
      out.delta1(i, j) = id - B(j, i);
      out.delta1(i, n + j) = id - R(j, i);
      out.delta2(i, j) = R(j, i) - id;
      out.delta2(n + i, j) = id - B(j, i);
    }
  return out;
}

HypothesisFlags hypothesis_flags(const BasicData& data) {
  const auto flags = validate_basic_data(data);
  const TileMetrics m = tile_metrics(data.tile);
  HypothesisFlags h;
  h.c1_positive = m.c1 >= 1;
  h.c2_positive = m.c2 >= 1;
  h.trace_ok = data.t == 0 || flags.trace_shift_constant.has_value();
  h.three_invertible_corners = flags.three_invertible_corners;
  // A missing second column or row counts as height or length -1.
  h.h0_gt_h1 = m.h[0] > (m.h.size() >= 2 ? m.h[1] : -1);
  h.w0_gt_w1 = m.wends[0] > (m.wends.size() >= 2 ? m.wends[1] : -1);
  return h;
}

namespace {

bool order_theorem_applies(const BasicData& data, const HypothesisFlags& h) {
  return validate_basic_data(data).invertible_corners && h.c1_positive && h.c2_positive && (h.h0_gt_h1 || h.w0_gt_w1);
}

}  // namespace

KTheoryReport compute_k_groups(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const BoundaryMaps maps = build_boundary_maps(g.matrices());
  KTheoryReport r;
  r.vertices = n;
  r.hypotheses = hypothesis_flags(g.data());

  const zlin::LatticeData first = zlin::analyze(maps.delta1, {IntegerVector(n, Integer(1))});
  r.coker_delta1 = first.cokernel.group;
  r.rank_delta1 = first.rank;
  const AbelianGroup coker2 = zlin::cokernel_group(maps.delta2);
  r.rank_delta2 = 2 * n - coker2.free_rank;
  r.ker_delta2_rank = n - r.rank_delta2;
  r.K0 = zlin::direct_sum(r.coker_delta1, AbelianGroup{r.ker_delta2_rank, {}});

  r.K1 = zlin::quotient_group(first.kernel, maps.delta2);
  // ker delta1 is saturated in Z^2N, so the torsion of the quotient is the
  // torsion of coker delta2.
  r.K1_from_homology = AbelianGroup{2 * n - r.rank_delta1 - r.rank_delta2, coker2.invariant_factors};
  if (!(r.K1 == r.K1_from_homology))
    throw Error(ErrorCode::TheoremViolation, "K1 = " + r.K1.to_string() + " but the homology count gives " +
                                                 r.K1_from_homology.to_string());

  r.unit.coordinates = first.cokernel.coordinates.at(0);
  r.unit.order = first.cokernel.order_of(0);
  const auto total = r.coker_delta1.order();
  r.unit.generator = total && r.unit.order && *total == *r.unit.order;

  if (order_theorem_applies(g.data(), r.hypotheses)) {
    if (r.ker_delta2_rank != 0) throw Error(ErrorCode::TheoremViolation, "ker delta2 is not trivial");
    if (r.K0.is_finite() && r.K1.is_finite() && !(*r.K0.order() == *r.K1.order()))
      throw Error(ErrorCode::TheoremViolation, "|K0| = " + r.K0.order()->to_string() +
                                                   " differs from |K1| = " + r.K1.order()->to_string());
  }
  return r;
}

KTheoryReport compute_k_groups(const BasicData& data, std::size_t vertex_limit) {
  return compute_k_groups(Graph(data, vertex_limit));
}

bool unit_class_is_generator(const KTheoryReport& report) {
  if (!report.K0.is_finite()) throw Error(ErrorCode::InfiniteK0, "K0 = " + report.K0.to_string());
  return report.unit.generator;
}

// ---------------------------------------------------------------------------
// Reduction chain

bool ReductionChain::all_verified() const {
  return std::all_of(steps.begin(), steps.end(), [](const DualStep& s) { return s.attempted && s.verified; });
}

Tile reduced_tile(const Tile& tile) {
  const TileMetrics m = tile_metrics(tile);
  if (m.c1 < 1) throw Error(ErrorCode::HypothesisFailed, "the tile has a single column");
  std::vector<int> tops(m.h.begin() + 1, m.h.end());
  tops[0] += 1;
  std::vector<int> rows(static_cast<std::size_t>(tops[0]) + 1, 0);
  for (int top : tops)
    for (int y = 0; y <= top; ++y) ++rows[static_cast<std::size_t>(y)];
  return Tile(std::move(rows));
}

namespace {

void require_taller_first_column(const Tile& tile) {
  const TileMetrics m = tile_metrics(tile);
  if (m.c1 < 1) throw Error(ErrorCode::HypothesisFailed, "the tile has a single column");
  if (m.h[0] <= m.h[1])
    throw Error(ErrorCode::HypothesisFailed, "the first column is not taller than the second (h0 = " +
                                                 std::to_string(m.h[0]) + ", h1 = " + std::to_string(m.h[1]) + ")");
}

using Key = std::vector<int>;

}  // namespace

DualStep verify_dual_step(const BasicData& data, std::size_t vertex_limit) {
  require_taller_first_column(data.tile);
  const Tile& tile = data.tile;
  const TileMetrics metrics = tile_metrics(tile);
  DualStep step;
  step.from = tile;
  step.to = reduced_tile(tile);
  step.multiplier = zlin::pow(Integer(data.q), static_cast<unsigned>(metrics.h[0] - metrics.h[1] - 1));
  const std::size_t r_b = static_cast<std::size_t>(*step.multiplier.to_int64());

  std::optional<Graph> big;
  std::optional<Graph> small;
  try {
    big.emplace(data, vertex_limit);
    small.emplace(make_basic_data(step.to, data.q), vertex_limit);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnumerationTooLarge) throw;
    step.detail = "graphs too large to compare";
    return step;
  }
  step.attempted = true;
  auto fail = [&step](const std::string& why) {
    step.detail = why;
    return step;
  };

  // S: cells i of T with i + e1 in T, listed with both positions.
  std::vector<std::size_t> s_at;
  std::vector<std::size_t> s_shifted;
  std::vector<Point> s_cells;
  for (std::size_t i = 0; i < tile.size(); ++i)
    if (auto j = tile.index_of(tile.cells()[i] + kE1)) {
      s_at.push_back(i);
      s_shifted.push_back(*j);
      s_cells.push_back(tile.cells()[i]);
    }
  // Overlap S and S + e1 as index pairs (position of i, position of i - e1) within S.
  std::vector<std::pair<std::size_t, std::size_t>> overlap;
  for (std::size_t a = 0; a < s_cells.size(); ++a)
    for (std::size_t b = 0; b < s_cells.size(); ++b)
      if (s_cells[a] == s_cells[b] + kE1) overlap.push_back({a, b});

  // Vertices grouped by (u on S, u on S + e1).
  std::map<std::pair<Key, Key>, std::vector<std::size_t>> groups;
  std::set<Key> classes;
  std::vector<std::pair<Key, Key>> label(big->vertex_count());
  for (std::size_t u = 0; u < big->vertex_count(); ++u) {
    const auto values = big->vertex_values(u);
    Key on_s;
    Key on_shift;
    for (std::size_t k = 0; k < s_at.size(); ++k) {
      on_s.push_back(values[s_at[k]]);
      on_shift.push_back(values[s_shifted[k]]);
    }
    classes.insert(on_s);
    label[u] = {on_s, on_shift};
    groups[label[u]].push_back(u);
  }
  step.classes = classes.size();

  // Edges of the quotient graph: class pairs agreeing on the overlap.
  std::map<Key, std::vector<Key>> successors;
  for (const auto& k1 : classes)
    for (const auto& k2 : classes) {
      bool agree = true;
      for (auto [a, b] : overlap) agree = agree && k1[a] == k2[b];
      if (agree) {
        successors[k1].push_back(k2);
        ++step.class_edges;
      }
    }

  // phi on vertices: each quotient edge carries exactly r_B vertices, and
  // every vertex lies over exactly one quotient edge.
  if (groups.size() != step.class_edges) return fail("vertices do not cover the quotient edges");
  for (const auto& [key, members] : groups) {
    const auto& succ = successors[key.first];
    if (!std::binary_search(succ.begin(), succ.end(), key.second))
      return fail("a vertex sits over a pair that is not a quotient edge");
    if (members.size() != r_b) return fail("a quotient edge carries " + std::to_string(members.size()) + " vertices");
  }

  // phi on edges: the dual edge from (k3, k4, j) to (k1, k2, i) exists iff
  // k2 = k3; its image must be the blue edge between the image vertices.
  std::size_t dual_edges = 0;
  for (std::size_t u = 0; u < big->vertex_count(); ++u) {
    std::vector<std::uint32_t> expected;
    for (const auto& k4 : successors[label[u].second]) {
      const auto& members = groups.at({label[u].second, k4});
      for (auto v : members) expected.push_back(static_cast<std::uint32_t>(v));
    }
    std::sort(expected.begin(), expected.end());
    dual_edges += expected.size();
    if (expected != big->matrices().blue_sources[u])
      return fail("blue sources of vertex " + std::to_string(u) + " differ from the dual edges");
  }

  // psi on vertices: the class of v goes to v on S with the new top box
  // holding minus the sum over S.
  const Point top{0, metrics.h[1] + 1};
  const Tile& reduced = step.to;
  std::map<Key, std::size_t> psi;
  std::set<std::size_t> images;
  for (const auto& k : classes) {
    std::vector<int> values(reduced.size(), 0);
    long long sum = 0;
    for (std::size_t a = 0; a < s_cells.size(); ++a) {
      auto idx = reduced.index_of(s_cells[a]);
      if (!idx) return fail("reduced tile does not contain S");
      values[*idx] = k[a];
      sum += k[a];
    }
    values[*reduced.index_of(top)] = reduce(-sum, data.q);
    auto idx = small->index_of(values);
    if (!idx) return fail("image of a class is not a vertex of the reduced graph");
    psi[k] = *idx;
    images.insert(*idx);
  }
  if (images.size() != small->vertex_count()) return fail("classes do not biject onto reduced vertices");

  // psi on edges: quotient edge (k1, k2) goes to the blue edge from psi(k2) to psi(k1).
  std::size_t small_edges = 0;
  for (const auto& row : small->matrices().blue_sources) small_edges += row.size();
  if (small_edges != step.class_edges) return fail("edge counts of the quotient and reduced graphs differ");
  for (const auto& [k1, succ] : successors)
    for (const auto& k2 : succ)
      if (small->matrices().B(psi[k1], psi[k2]) != 1) return fail("a quotient edge has no image edge");

  step.verified = dual_edges == big->vertex_count() * (big->matrices().blue_sources.empty()
                                                           ? 0
                                                           : big->matrices().blue_sources[0].size());
  if (!step.verified) return fail("dual edge count differs from the blue edge count");
  step.detail = "verified";
  return step;
}

ReductionChain reduction_chain(const BasicData& data, bool verify, std::size_t vertex_limit) {
  require_taller_first_column(data.tile);
  const TileMetrics m = tile_metrics(data.tile);
  ReductionChain chain;
  Tile current = data.tile;
  for (int i = 1; i <= m.c1; ++i) {
    const Tile next = reduced_tile(current);
    const int exponent = i == 1 ? m.h[0] - m.h[1] - 1 : m.h[static_cast<std::size_t>(i - 1)] - m.h[static_cast<std::size_t>(i)];
    chain.tiles.push_back(next);
    chain.multipliers.push_back(zlin::pow(Integer(data.q), static_cast<unsigned>(exponent)));
    if (verify) {
      const BasicData step_data = i == 1 ? data : make_basic_data(current, data.q);
      DualStep step = verify_dual_step(step_data, vertex_limit);
      if (!(step.multiplier == chain.multipliers.back()))
        throw Error(ErrorCode::TheoremViolation, "multiplier mismatch at step " + std::to_string(i));
      if (step.attempted && !step.verified)
        throw Error(ErrorCode::TheoremViolation, "dual description fails at step " + std::to_string(i) + ": " +
                                                     step.detail);
      chain.steps.push_back(std::move(step));
    }
    current = next;
  }
  try {
    const Graph last(make_basic_data(current, data.q), vertex_limit);
    chain.final_vertices = last.vertex_count();
    chain.final_complete = true;
    for (const auto& row : last.matrices().blue_sources) chain.final_complete = chain.final_complete && row.size() == last.vertex_count();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnumerationTooLarge) throw;
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Kernel checks

namespace {

std::size_t kernel_rank_of_one_minus(const std::vector<std::vector<std::uint32_t>>& rows, long long scale) {
  const std::size_t n = rows.size();
  IntegerMatrix a = IntegerMatrix::identity(n);
  for (std::size_t u = 0; u < n; ++u)
    for (auto v : rows[u]) a(v, u) -= scale;
  return n - zlin::rank(a);
}

}  // namespace

KernelReport kernel_triviality_check(const BasicData& data, std::size_t vertex_limit) {
  const HypothesisFlags h = hypothesis_flags(data);
  if (!h.c1_positive || !h.c2_positive) throw Error(ErrorCode::HypothesisFailed, "the tile must have c1, c2 >= 1");
  if (!validate_basic_data(data).invertible_corners)
    throw Error(ErrorCode::HypothesisFailed, "corner weights must be units");
  const Graph g(data, vertex_limit);
  KernelReport r;
  r.h0_gt_h1 = h.h0_gt_h1;
  r.w0_gt_w1 = h.w0_gt_w1;
  r.ker_blue_rank = kernel_rank_of_one_minus(g.matrices().blue_sources, 1);
  r.ker_red_rank = kernel_rank_of_one_minus(g.matrices().red_sources, 1);
  r.ker_delta2_rank = g.vertex_count() - zlin::rank(build_boundary_maps(g.matrices()).delta2);
  if (r.h0_gt_h1) {
    const Tile reduced = reduced_tile(data.tile);
    const TileMetrics m = tile_metrics(data.tile);
    const Graph h1(make_basic_data(reduced, data.q), vertex_limit);
    const long long scale = static_cast<long long>(*zlin::pow(Integer(data.q), static_cast<unsigned>(m.h[0] - m.h[1] - 1)).to_int64());
    r.ker_reduced_rank = kernel_rank_of_one_minus(h1.matrices().blue_sources, scale);
  }
  if (r.h0_gt_h1 && (r.ker_blue_rank != 0 || r.ker_reduced_rank != 0u))
    throw Error(ErrorCode::TheoremViolation, "ker(1 - B^t) is not trivial");
  if (r.w0_gt_w1 && r.ker_red_rank != 0) throw Error(ErrorCode::TheoremViolation, "ker(1 - R^t) is not trivial");
  if ((r.h0_gt_h1 || r.w0_gt_w1) && r.ker_delta2_rank != 0)
    throw Error(ErrorCode::TheoremViolation, "ker delta2 is not trivial");
  return r;
}

bool k0_equals_k1_check(const KTheoryReport& report, const BasicData& data) {
  const HypothesisFlags h = hypothesis_flags(data);
  if (!h.h0_gt_h1 && !h.w0_gt_w1) throw Error(ErrorCode::HypothesisFailed, "needs h0 > h1 or w0 > w1");
  if (!report.K0.is_finite() || !report.K1.is_finite())
    throw Error(ErrorCode::HypothesisFailed, "K0 = " + report.K0.to_string() + ", K1 = " + report.K1.to_string());
  return *report.K0.order() == *report.K1.order();
}

GcdObservation gcd_order_observation(const KTheoryReport& report, const BasicData& data) {
  GcdObservation o;
  const Integer q(data.q);
  o.predicted = zlin::gcd(zlin::pow(q, static_cast<unsigned>(data.tile.c2())) - Integer(1),
                          zlin::pow(q, static_cast<unsigned>(data.tile.c1())) - Integer(1));
  o.k0_order = report.K0.order();
  o.matches = o.k0_order && *o.k0_order == o.predicted;
  return o;
}

}  // namespace tilegraph
