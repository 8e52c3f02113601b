#pragma once

#include <span>

#include "mstfan/config.hpp"

namespace mstfan {

// det of the (k x (n+1)) rows (1, v_i) when k = n+1; the orientation of a
// full-dimensional simplex (sign of det L~(s)).
Rational orientation(const PointConfiguration& config, std::span<const PointIndex> vertices);

bool affinely_independent(const PointConfiguration& config, std::span<const PointIndex> vertices);

// Edge-length linear form l(r): the value at h is det of the (n+2)x(n+2)
// matrix with rows (1, v, h(v)) for the support of r in sorted order. The
// coefficient of v is the cofactor of its entry in the height column.
LinearForm edge_length_form(const PointConfiguration& config, const Ridge& r);

// L_h(r) = |l_h(r)|.
Rational tropical_edge_length(const PointConfiguration& config, const HeightFunction& h, const Ridge& r);

// Folding form Psi_{s,j}, scaled so that Psi(h) >= 0 exactly when the lifted
// point j lies on or below the hyperplane through the lifted simplex s:
//
//   Psi_{s,j}(h) = |det L~(s)| * (affine interpolation of h|s at v_j - h(v_j)).
//
// Throws InvalidApexError when j is a vertex of s.
LinearForm folding_form(const PointConfiguration& config, const Simplex& s, PointIndex j);

// Sign split of the support of l(r); the smallest support index is positive.
SignedCircuit fundamental_circuit(const PointConfiguration& config, const Ridge& r);

// Lattice-normalized volume of the simplex spanned by `vertices` inside its
// own affine lattice: the gcd of the maximal minors of the edge-vector
// matrix. A single point has volume 1. Throws DegenerateSimplexError when the
// points are affinely dependent.
Rational normalized_volume(const PointConfiguration& config, std::span<const PointIndex> vertices);

// lambda(s,t) = nvol(s n t) / (nvol(s) nvol(t)); independent of heights.
Rational volume_factor(const PointConfiguration& config, const Ridge& r);

// e_h(r) = L_h(r) * lambda(r).
Rational epistatic_weight(const PointConfiguration& config, const HeightFunction& h, const Ridge& r);

}  // namespace mstfan
