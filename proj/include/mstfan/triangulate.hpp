#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mstfan/config.hpp"

namespace mstfan {

struct Triangulation {
  PointConfiguration config;
  std::vector<Simplex> cells;  // sorted
};

// Dual graph Gamma(h): nodes are the maximal cells, edges the facet-sharing
// pairs in canonical ridge order.
struct DualGraph {
  std::vector<Simplex> nodes;
  std::vector<Ridge> edges;
  std::vector<std::pair<int, int>> endpoints;  // node indices of (left, right)
  std::vector<LinearForm> forms;               // l(r)
  std::vector<Rational> lengths;               // L_h(r) for the defining h

  int node_index(const Simplex& s) const;  // -1 when absent
  int edge_index(const Ridge& r) const;    // -1 when absent
};

// All affinely independent (n+1)-subsets with their folding forms, shared
// between regular_triangulation and enumerate_triangulations.
class CandidateSet {
 public:
  explicit CandidateSet(PointConfiguration config);

  const PointConfiguration& config() const { return config_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  // (j, Psi_{s,j}) for every j not in simplices()[i].
  const std::vector<std::pair<PointIndex, LinearForm>>& folding(std::size_t i) const { return folding_[i]; }

 private:
  PointConfiguration config_;
  std::vector<Simplex> simplices_;
  std::vector<std::vector<std::pair<PointIndex, LinearForm>>> folding_;
};

// Sigma(h): every candidate s with Psi_{s,j}(h) > 0 for all j outside s.
// Throws GenericityError (witness "(s, j)") when some folding form vanishes.
Triangulation regular_triangulation(const PointConfiguration& config, const HeightFunction& h);
Triangulation regular_triangulation(const CandidateSet& candidates, const HeightFunction& h);

enum class GenericityViolation { none, vanishing_folding_form, zero_edge_length, accidental_tie };

struct GenericityReport {
  bool generic = true;
  GenericityViolation category = GenericityViolation::none;
  std::string witness;
};

GenericityReport is_generic(const PointConfiguration& config, const HeightFunction& h);
GenericityReport is_generic(const CandidateSet& candidates, const HeightFunction& h);

DualGraph dual_graph(const Triangulation& tri, const HeightFunction& h);

// The 0-cell of the tropical hypersurface max_a {h(a) + <a, x>} dual to
// `cell`. Throws InternalError if the maximality postcondition fails.
RationalVector dual_vertex_position(const Triangulation& tri, const HeightFunction& h, const Simplex& cell);

// Every circuit of the affine matroid, each once, with the smallest support
// index positive.
std::vector<SignedCircuit> affine_circuits(const PointConfiguration& config);

// Whether conv(s) and conv(t) meet in their common face.
bool properly_intersect(const PointConfiguration& config, const Simplex& s, const Simplex& t);

// Throws InternalError unless the cells cover conv(A) with matching volume
// and intersect properly pairwise.
void validate_triangulation(const Triangulation& tri);

Rational total_volume(const PointConfiguration& config);

struct EnumeratedTriangulation {
  Triangulation triangulation;
  bool regular = false;
  RationalVector interior_witness;  // strictly inside the secondary cone when regular
};

struct EnumerationLimits {
  std::size_t max_points = 12;
  int max_dim = 3;
  bool override_guard = false;
};

// Every triangulation of a configuration in convex position, each tagged
// regular/non-regular, sorted by cell list. Throws ScaleGuardError beyond the
// limits.
std::vector<EnumeratedTriangulation> enumerate_triangulations(const PointConfiguration& config,
                                                              const EnumerationLimits& limits = {});

}  // namespace mstfan
