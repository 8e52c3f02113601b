#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mstfan/cone.hpp"
#include "mstfan/triangulate.hpp"

namespace mstfan {

// Edge-ordered spanning tree; entries index DualGraph::edges.
struct OrderedSpanningTree {
  std::vector<int> edges;

  bool contains(int e) const;
  auto operator<=>(const OrderedSpanningTree&) const = default;
};

// Consecutive blocks of tree positions whose edges have identical |forms|.
// Ranges are inclusive, 0-based positions in the order.
struct InstabilityPartition {
  std::vector<std::pair<int, int>> ranges;

  bool operator==(const InstabilityPartition&) const = default;
};

InstabilityPartition instability_partition(const DualGraph& g, const OrderedSpanningTree& t);

// Positions of the tree edges that form singleton ranges.
std::vector<int> stable_edges(const DualGraph& g, const OrderedSpanningTree& t);

struct GreedyResult {
  OrderedSpanningTree tree;
  InstabilityPartition partition;
};

// Kruskal; ties broken by canonical ridge order. `weights` is aligned with
// g.edges. Throws InternalError when g is disconnected.
GreedyResult greedy_mst(const DualGraph& g, const RationalVector& weights);

struct CutEdge {
  int position = -1;  // i(r), 0-based
  int edge = -1;      // the tree edge at that position
};

// Throws ValidationError when r is a tree edge.
CutEdge cut_edge(const DualGraph& g, const OrderedSpanningTree& t, int r);

// The cone conditions evaluated at one point: weights nondecreasing along t and
// w(cut edge of r) <= w(r) for every non-tree edge r.
bool is_possible_mst_at(const DualGraph& g, const RationalVector& weights, const OrderedSpanningTree& t);

struct MSTCone {
  OrderedSpanningTree tree;
  InstabilityPartition partition;
  HCone cone;
  std::vector<LinearForm> in_tree_conditions;                  // m-1 forms
  std::vector<std::pair<int, LinearForm>> cut_edge_conditions;  // (non-tree edge, form)

  std::size_t condition_count() const { return in_tree_conditions.size() + cut_edge_conditions.size(); }
};

// Everything that only depends on (tri, h): the dual graph, the secondary
// cone and the signed edge-length forms s_r * l(r), positive on int sc(h).
class MstFanContext {
 public:
  // Throws BoundaryWitnessError unless h is strictly inside sc(tri), and
  // GenericityError when some edge length vanishes at h.
  MstFanContext(Triangulation tri, HeightFunction h);

  const PointConfiguration& config() const { return tri_.config; }
  const Triangulation& triangulation() const { return tri_; }
  const HeightFunction& heights() const { return h_; }
  const DualGraph& graph() const { return graph_; }
  // sc(h) with redundant constraints removed; same set as secondary_cone.
  const HCone& secondary() const { return sc_; }
  const std::vector<int>& signs() const { return signs_; }
  const LinearForm& signed_form(int e) const { return signed_[static_cast<std::size_t>(e)]; }
  // Edges whose |forms| coincide with e's (including e).
  const std::vector<int>& tie_class(int e) const { return ties_[static_cast<std::size_t>(e)]; }

 private:
  Triangulation tri_;
  HeightFunction h_;
  DualGraph graph_;
  HCone sc_;
  std::vector<int> signs_;
  std::vector<LinearForm> signed_;
  std::vector<std::vector<int>> ties_;
};

// sc(h) cut by the in-tree comparisons and one cut-edge comparison per non-tree edge.
MSTCone mst_cone(const MstFanContext& ctx, const OrderedSpanningTree& t);
MSTCone mst_cone(const PointConfiguration& config, const HeightFunction& h, const Triangulation& tri,
                 const DualGraph& g, const OrderedSpanningTree& t);

bool is_realizable(const MstFanContext& ctx, const OrderedSpanningTree& t);
bool is_realizable(const PointConfiguration& config, const HeightFunction& h, const Triangulation& tri,
                   const DualGraph& g, const OrderedSpanningTree& t);

struct RealizableOptions {
  bool exhaustive = false;  // test every (tree, order) instead of pruning prefixes
  unsigned jobs = 1;
  std::size_t max_nodes = 12;
  bool override_guard = false;
};

struct RealizableEnumeration {
  Integer spanning_trees;
  Integer ordered_trees;          // sum over spanning trees of (m)!
  std::vector<MSTCone> realizable;  // sorted by order
};

// Throws ScaleGuardError beyond options.max_nodes cells.
RealizableEnumeration enumerate_realizable(const MstFanContext& ctx, const RealizableOptions& options = {});

struct FanReport {
  std::size_t cones = 0;
  std::size_t support_samples = 0;
  std::size_t support_violations = 0;
  std::size_t max_multiplicity = 0;  // most cones containing one sample
  std::size_t purity_violations = 0;
  std::size_t face_pairs = 0;
  std::size_t face_violations = 0;

  bool ok() const { return support_violations == 0 && purity_violations == 0 && face_violations == 0; }
};

// Whether a n b is a face of a, decided by the implicit equalities of a n b.
bool intersection_is_face(const HCone& a, const HCone& b);

struct MstFan {
  std::vector<MSTCone> cones;
  FanReport report;
};

// Realizable cones of ctx plus the fan checks; throws FanViolationError
// naming the first failed check.
MstFan mst_fan(const MstFanContext& ctx, std::uint64_t seed, std::size_t samples = 100,
               const RealizableOptions& options = {});

struct PermutationAnalysis {
  std::vector<int> sigma;  // sigma[i] = position in K2 of K1's i-th range
  int inversions = 0;      // minimal number of adjacent transpositions
  int codimension = 0;     // of K1 n K2
};

int inversion_count(const std::vector<int>& sigma);

// nullopt when the trees have different edge sets or different ranges.
std::optional<PermutationAnalysis> order_permutation_analysis(const MSTCone& k1, const MSTCone& k2);

}  // namespace mstfan
