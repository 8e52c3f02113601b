#pragma once

#include <optional>
#include <vector>

#include "mstfan/mst_fan.hpp"

namespace mstfan {

enum class WeightKind { lattice, epistatic };

// L_h(r) or e_h(r) for every edge of g.
RationalVector edge_weights(const PointConfiguration& config, const HeightFunction& h, const DualGraph& g,
                            WeightKind kind);

struct FiltrationStep {
  int edge = -1;  // index into the dual graph edges
  Rational weight;
  bool critical = false;
  bool forced_tie = false;  // |form| equals the previous step's
  // Clusters joined by a critical step, as merge-tree node ids (leaves are
  // the cells 0..#cells-1, internal nodes follow in step order).
  int merged_left = -1;
  int merged_right = -1;
};

struct Filtration {
  Triangulation triangulation;
  DualGraph graph;
  WeightKind kind = WeightKind::lattice;
  std::vector<FiltrationStep> steps;

  OrderedSpanningTree critical_tree() const;
};

// Ascending pass over Gamma(h); throws GenericityError for non-generic h.
Filtration epistatic_filtration(const PointConfiguration& config, const HeightFunction& h,
                                WeightKind kind = WeightKind::lattice);

struct MergeTree {
  struct Node {
    int left = -1;
    int right = -1;
    int parent = -1;
    int edge = -1;  // critical edge, internal nodes only
    Rational weight;
  };

  std::vector<Simplex> leaves;
  std::vector<Node> nodes;  // leaves first, then one internal node per critical step
  int root = -1;

  bool is_leaf(int v) const { return v < static_cast<int>(leaves.size()); }
};

MergeTree merge_tree(const Filtration& f);

// Sum of weights along the unique tree path between two cells (node indices
// of g). Throws ValidationError for unknown nodes.
Rational leaf_distance(const DualGraph& g, const OrderedSpanningTree& tree, const RationalVector& weights, int a,
                       int b);

struct SupportValue {
  Rational value;
  RationalVector population;  // barycentric weights on the points of A
  Simplex cell;
};

// h*(w) from the containing cell of Sigma(h), with the lexicographically
// smallest cell on ties. Throws InfeasibleError when w is outside conv(A).
// The optimum is spot-checked against `checks` vertices of the fiber
// polytope reached by random objectives.
SupportValue eval_support_function(const PointConfiguration& config, const HeightFunction& h, const Triangulation& tri,
                                   const RationalVector& w, std::size_t checks = 20);

// max h.p subject to p >= 0, sum p = 1, sum p_a a = w, by the exact LP.
std::optional<Rational> support_function_lp(const PointConfiguration& config, const HeightFunction& h,
                                            const RationalVector& w);

}  // namespace mstfan
