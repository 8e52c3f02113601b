#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mstfan/config.hpp"
#include "mstfan/random.hpp"
#include "mstfan/triangulate.hpp"

namespace mstfan {

// Homogeneous cone {x in R^A : f(x) >= 0 for every constraint f}. Constraints
// are kept primitive (positive rescaling only), deduplicated and sorted; zero
// forms are dropped. No constraints means the whole space.
class HCone {
 public:
  explicit HCone(std::shared_ptr<const std::vector<Label>> labels);
  HCone(std::shared_ptr<const std::vector<Label>> labels, const std::vector<LinearForm>& constraints);

  static HCone full_space(const PointConfiguration& config);

  std::size_t ambient_dimension() const { return labels_->size(); }
  const std::vector<Label>& labels() const { return *labels_; }
  const std::shared_ptr<const std::vector<Label>>& shared_labels() const { return labels_; }
  const std::vector<LinearForm>& constraints() const { return constraints_; }

  void add(const LinearForm& f);
  void add_equality(const LinearForm& f) {
    add(f);
    add(-f);
  }

  bool contains(const RationalVector& x) const;
  bool contains_strictly(const RationalVector& x) const;

  bool same_ambient(const HCone& other) const;

 private:
  std::shared_ptr<const std::vector<Label>> labels_;
  std::vector<LinearForm> constraints_;
};

// Throws ValidationError on mismatched label sets.
HCone intersect(const HCone& a, const HCone& b);

struct FullDimensionality {
  bool full = false;
  RationalVector witness;  // satisfies every constraint with value >= 1
};

// Decided by exact-LP feasibility of {f_i(x) >= 1}.
FullDimensionality is_full_dimensional(const HCone& c);

struct ConeDimensionReport {
  int dimension = 0;
  std::vector<std::size_t> implicit_equalities;  // indices into constraints()
  std::optional<RationalVector> interior_point;  // present iff full-dimensional
  RationalVector relative_interior_point;        // non-implicit constraints >= 1
};

// One LP: maximize sum t_i over f_i(x) >= t_i, 0 <= t_i <= 1. Every optimum
// sets t_i = 1 exactly on the constraints that are not implicit equalities.
ConeDimensionReport dimension(const HCone& c);

// Per-constraint definition: max f_i subject to c and f_i <= 1 equals 0.
bool is_implicit_equality(const HCone& c, std::size_t i);

// inner is a subset of outer.
bool cone_contains(const HCone& outer, const HCone& inner);

// Drops constraints implied by the remaining ones.
HCone irredundant(const HCone& c);

// Dimension of {x : f(x) = 0 for every constraint}.
int lineality_dimension(const HCone& c);

// Random point strictly inside a full-dimensional cone: lambda*w + r for a
// random integer vector r and the LP witness w. Throws ValidationError when
// the cone is not full-dimensional.
RationalVector sample_interior_point(const HCone& c, RationalSampler& rng, long spread = 20);

// sc(T) = intersection of H_s over all cells s.
HCone secondary_cone(const PointConfiguration& config, const Triangulation& tri);

// sc(R) = intersection of H_s over the cells appearing in R. Throws
// ValidationError for an empty ridge set.
HCone secondary_cone_of_ridge_graph(const PointConfiguration& config, const std::vector<Ridge>& ridges);

// Sign of l(r) on the interior of sc(R), read off at `witness`. Throws
// BoundaryWitnessError unless witness is strictly inside sc(R).
int ridge_sign(const PointConfiguration& config, const std::vector<Ridge>& ridges, const Ridge& r,
               const HeightFunction& witness);

// {s1 l(r1) >= 0} n {s2 l(r2) >= 0} n {s2 l(r2) - s1 l(r1) >= 0}, the cone on
// which |l(r1)| <= |l(r2)| with the given signs.
HCone comparison_halfcone(const PointConfiguration& config, const Ridge& r1, int s1, const Ridge& r2, int s2,
                          const std::shared_ptr<const std::vector<Label>>& labels);

// The comparison cone, or nullopt when its intersection with scR is not
// full-dimensional.
std::optional<HCone> comparison_cone(const PointConfiguration& config, const HCone& scR, const Ridge& r1, int s1,
                                     const Ridge& r2, int s2);

}  // namespace mstfan
