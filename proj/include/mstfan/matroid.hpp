#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mstfan/mst_fan.hpp"

namespace mstfan {

// Edge subsets are bitmasks over the ground set (at most 64 edges).
using EdgeSet = std::uint64_t;

// Cycle matroid of a multigraph on nodes 0..nodes-1.
class CycleMatroid {
 public:
  CycleMatroid(int nodes, std::vector<std::pair<int, int>> edges);
  static CycleMatroid of(const DualGraph& g);

  int nodes() const { return nodes_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  EdgeSet ground_set() const;

  // #nodes - #components of (V, S).
  int rank(EdgeSet s) const;
  int rank() const { return rank(ground_set()); }
  bool is_independent(EdgeSet s) const;

  // Bases (spanning trees when connected), in increasing mask order.
  std::vector<EdgeSet> bases() const;
  // Kirchhoff's matrix-tree theorem.
  Integer spanning_tree_count() const;

 private:
  int nodes_;
  std::vector<std::pair<int, int>> edges_;
};

// Edges in no minimum-weight basis, by enumerating all bases.
EdgeSet initial_matroid_loops(const CycleMatroid& m, const RationalVector& w);

// Same set via the cycle criterion: e lies in some minimum basis iff its
// endpoints are not joined by edges of strictly smaller weight.
EdgeSet initial_matroid_loops_fast(const CycleMatroid& m, const RationalVector& w);

bool bergman_membership(const CycleMatroid& m, const RationalVector& w);

// Chain of edge sets, empty set first and ground set last.
struct Flag {
  std::vector<EdgeSet> chain;

  bool operator==(const Flag&) const = default;
};

// Level sets of w in increasing order: F_i = {e : w(e) <= i-th distinct value}.
Flag flag_of(const RationalVector& w);

bool is_flat(const CycleMatroid& m, EdgeSet s);
bool is_flag_of_flats(const CycleMatroid& m, const Flag& flag);

// A ridge whose fundamental circuit is the given circuit of the affine
// matroid. Throws InvalidCircuitError when z is not a circuit.
Ridge ridge_for_circuit(const PointConfiguration& config, std::vector<PointIndex> z);

struct SaturatingCell {
  std::vector<std::size_t> cones;  // indices into the cone list
  HCone cell;
  RationalVector witness;  // relative interior point of the cell
  bool bergman = false;    // |l_witness(r)| passes bergman_membership
};

// Inclusion-minimal collections of cones whose trees cover every edge of g
// and whose intersection is more than its lineality space. Throws
// ScaleGuardError for more than 24 cones unless overridden.
std::vector<SaturatingCell> saturating_cells(const std::vector<MSTCone>& cones, const DualGraph& g,
                                             bool override_guard = false);

}  // namespace mstfan
