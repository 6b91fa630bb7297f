#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tilegraph/graph.hpp"
#include "tilegraph/tiles.hpp"
#include "tilegraph/zlin.hpp"

// K-theory of the graph algebras from the vertex matrices, and the
// structural results about the kernels that make K0 and K1 finite.
namespace tilegraph {

struct BoundaryMaps {
  zlin::IntegerMatrix delta1;  // N x 2N: (1 - B^t | 1 - R^t)
  zlin::IntegerMatrix delta2;  // 2N x N: (R^t - 1 ; 1 - B^t)
};
BoundaryMaps build_boundary_maps(const VertexMatrices& m);
/// Errors: DimensionMismatch.
BoundaryMaps build_boundary_maps(const zlin::IntegerMatrix& B, const zlin::IntegerMatrix& R);

struct UnitClass {
  zlin::IntegerVector coordinates;  // torsion coordinates, then free ones
  std::optional<zlin::Integer> order;
  bool generator = false;  // generates all of coker delta1
};

struct HypothesisFlags {
  bool c1_positive = false;
  bool c2_positive = false;
  bool trace_ok = false;
  bool three_invertible_corners = false;
  bool h0_gt_h1 = false;  // first column taller than the second
  bool w0_gt_w1 = false;  // first row longer than the second
  bool aperiodic() const { return c1_positive && c2_positive && three_invertible_corners; }
  bool simple() const { return aperiodic() && trace_ok; }
};
HypothesisFlags hypothesis_flags(const BasicData& data);

struct KTheoryReport {
  std::size_t vertices = 0;
  zlin::AbelianGroup coker_delta1;
  std::size_t ker_delta2_rank = 0;
  zlin::AbelianGroup K0;  // coker delta1 + Z^ker_delta2_rank
  zlin::AbelianGroup K1;  // ker delta1 / img delta2
  /// K1 again, from ranks and the torsion of coker delta2.
  zlin::AbelianGroup K1_from_homology;
  std::size_t rank_delta1 = 0;
  std::size_t rank_delta2 = 0;
  UnitClass unit;
  HypothesisFlags hypotheses;
};

/// Errors: CornersNotInvertible, EnumerationTooLarge, TheoremViolation when
/// the two K1 computations disagree or an order equality that must hold fails.
KTheoryReport compute_k_groups(const Graph& g);
KTheoryReport compute_k_groups(const BasicData& data, std::size_t vertex_limit = kDefaultVertexLimit);

/// Errors: InfiniteK0.
bool unit_class_is_generator(const KTheoryReport& report);

/// One application of the dual graph description of the blue graph.
struct DualStep {
  Tile from;
  Tile to;
  zlin::Integer multiplier;
  bool attempted = false;  // graphs small enough to build
  bool verified = false;
  std::size_t classes = 0;      // vertices of the quotient graph
  std::size_t class_edges = 0;  // its edges
  std::string detail;
};

struct ReductionChain {
  std::vector<Tile> tiles;  // S_1+, ..., S_c1+
  std::vector<zlin::Integer> multipliers;
  std::vector<DualStep> steps;
  std::size_t final_vertices = 0;
  bool final_complete = false;  // the last blue graph joins every pair of vertices
  bool all_verified() const;
};

/// The tile obtained by dropping the first column and adding one box on top
/// of the new first column. Errors: HypothesisFailed when c1 = 0.
Tile reduced_tile(const Tile& tile);

/// Errors: HypothesisFailed (first column not taller than the second, or c1 = 0),
/// TheoremViolation when a constructed isomorphism fails its checks.
ReductionChain reduction_chain(const BasicData& data, bool verify = true,
                               std::size_t vertex_limit = kDefaultVertexLimit);

/// Builds the maps of the dual graph isomorphism for one step and checks
/// them vertex by vertex and edge by edge.
DualStep verify_dual_step(const BasicData& data, std::size_t vertex_limit = kDefaultVertexLimit);

struct KernelReport {
  std::size_t ker_blue_rank = 0;   // ker(1 - B^t)
  std::size_t ker_red_rank = 0;    // ker(1 - R^t)
  std::size_t ker_delta2_rank = 0;
  std::optional<std::size_t> ker_reduced_rank;  // ker(1 - r B_1^t) for the first reduced graph
  bool h0_gt_h1 = false;
  bool w0_gt_w1 = false;
};
/// Errors: HypothesisFailed (c1 or c2 is 0, or corners not invertible),
/// TheoremViolation when a kernel that must vanish does not.
KernelReport kernel_triviality_check(const BasicData& data, std::size_t vertex_limit = kDefaultVertexLimit);

/// Errors: HypothesisFailed (neither h0 > h1 nor w0 > w1, or a group is infinite).
/// A missing second column or row counts as height or length -1 here.
bool k0_equals_k1_check(const KTheoryReport& report, const BasicData& data);

struct GcdObservation {
  zlin::Integer predicted;  // gcd(q^c2 - 1, q^c1 - 1)
  std::optional<zlin::Integer> k0_order;
  bool matches = false;
};
GcdObservation gcd_order_observation(const KTheoryReport& report, const BasicData& data);

}  // namespace tilegraph
