#include "mstfan/cone.hpp"

#include <algorithm>
#include <set>

#include "mstfan/core.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/lp.hpp"

namespace mstfan {

namespace {

Matrix constraint_matrix(const std::vector<LinearForm>& forms, std::size_t n) {
  Matrix m(forms.size(), n);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = forms[i][j];
  }
  return m;
}

// maximize objective over {constraints >= 0, objective <= 1}.
LpResult bounded_max(const std::vector<LinearForm>& constraints, const LinearForm& objective, std::size_t n) {
  Matrix m(constraints.size() + 1, n);
  RationalVector rhs(constraints.size() + 1);
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = constraints[i][j];
  }
  for (std::size_t j = 0; j < n; ++j) m(constraints.size(), j) = -objective[j];
  rhs.back() = -1;
  return maximize(m, rhs, objective.coefficients());
}

}  // namespace

HCone::HCone(std::shared_ptr<const std::vector<Label>> labels) : labels_(std::move(labels)) {}

HCone::HCone(std::shared_ptr<const std::vector<Label>> labels, const std::vector<LinearForm>& constraints)
    : labels_(std::move(labels)) {
  for (const auto& f : constraints) add(f);
}

HCone HCone::full_space(const PointConfiguration& config) {
  return HCone(std::make_shared<const std::vector<Label>>(config.labels()));
}

void HCone::add(const LinearForm& f) {
  if (f.size() != ambient_dimension()) throw ValidationError("constraint has wrong ambient dimension");
  if (f.is_zero()) return;
  LinearForm p = primitive(f);
  auto it = std::lower_bound(constraints_.begin(), constraints_.end(), p);
  if (it != constraints_.end() && *it == p) return;
  constraints_.insert(it, std::move(p));
}

bool HCone::contains(const RationalVector& x) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const LinearForm& f) { return sgn(f.evaluate(x)) >= 0; });
}

bool HCone::contains_strictly(const RationalVector& x) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const LinearForm& f) { return sgn(f.evaluate(x)) > 0; });
}

bool HCone::same_ambient(const HCone& other) const {
  return labels_ == other.labels_ || *labels_ == *other.labels_;
}

HCone intersect(const HCone& a, const HCone& b) {
  if (!a.same_ambient(b)) throw ValidationError("cones live over different label sets");
  HCone out = a;
  for (const auto& f : b.constraints()) out.add(f);
  return out;
}

FullDimensionality is_full_dimensional(const HCone& c) {
  const std::size_t n = c.ambient_dimension();
  if (c.constraints().empty()) return {true, RationalVector(n)};
  auto x = find_feasible(constraint_matrix(c.constraints(), n), RationalVector(c.constraints().size(), Rational(1)));
  if (!x) return {false, {}};
  return {true, std::move(*x)};
}

ConeDimensionReport dimension(const HCone& c) {
  const std::size_t n = c.ambient_dimension();
  const std::size_t m = c.constraints().size();
  ConeDimensionReport report;
  if (m == 0) {
    report.dimension = static_cast<int>(n);
    report.interior_point = RationalVector(n);
    report.relative_interior_point = RationalVector(n);
    return report;
  }
  // variables (x, t); rows: f_i(x) - t_i >= 0, t_i >= 0, -t_i >= -1.
  Matrix rows(3 * m, n + m);
  RationalVector rhs(3 * m);
  RationalVector objective(n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows(i, j) = c.constraints()[i][j];
    rows(i, n + i) = -1;
    rows(m + i, n + i) = 1;
    rows(2 * m + i, n + i) = -1;
    rhs[2 * m + i] = -1;
    objective[n + i] = 1;
  }
  const auto lp = maximize(rows, rhs, objective);
  if (lp.status != LpStatus::optimal) throw InternalError("cone dimension LP did not reach an optimum");
  RationalVector x(lp.x.begin(), lp.x.begin() + static_cast<long>(n));
  std::vector<LinearForm> equalities;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(lp.x[n + i]) == 0) {
      report.implicit_equalities.push_back(i);
      equalities.push_back(c.constraints()[i]);
    }
  }
  const auto eq_rank = equalities.empty() ? std::size_t{0} : rank(constraint_matrix(equalities, n));
  report.dimension = static_cast<int>(n - eq_rank);
  if (report.implicit_equalities.empty()) report.interior_point = x;
  report.relative_interior_point = std::move(x);
  return report;
}

bool is_implicit_equality(const HCone& c, std::size_t i) {
  const auto lp = bounded_max(c.constraints(), c.constraints().at(i), c.ambient_dimension());
  if (lp.status != LpStatus::optimal) throw InternalError("implicit-equality LP did not reach an optimum");
  return sgn(lp.value) == 0;
}

bool cone_contains(const HCone& outer, const HCone& inner) {
  if (!outer.same_ambient(inner)) throw ValidationError("cones live over different label sets");
  for (const auto& g : outer.constraints()) {
    const auto lp = bounded_max(inner.constraints(), -g, inner.ambient_dimension());
    if (lp.status != LpStatus::optimal) throw InternalError("containment LP did not reach an optimum");
    if (sgn(lp.value) > 0) return false;
  }
  return true;
}

HCone irredundant(const HCone& c) {
  std::vector<LinearForm> kept = c.constraints();
  for (std::size_t i = kept.size(); i-- > 0;) {
    std::vector<LinearForm> others;
    others.reserve(kept.size() - 1);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (k != i) others.push_back(kept[k]);
    }
    const auto lp = bounded_max(others, -kept[i], c.ambient_dimension());
    if (lp.status != LpStatus::optimal) throw InternalError("redundancy LP did not reach an optimum");
    if (sgn(lp.value) <= 0) kept = std::move(others);
  }
  return HCone(c.shared_labels(), kept);
}

int lineality_dimension(const HCone& c) {
  const auto n = c.ambient_dimension();
  if (c.constraints().empty()) return static_cast<int>(n);
  return static_cast<int>(n - rank(constraint_matrix(c.constraints(), n)));
}

RationalVector sample_interior_point(const HCone& c, RationalSampler& rng, long spread) {
  const auto fd = is_full_dimensional(c);
  if (!fd.full) throw ValidationError("cannot sample the interior of a lower-dimensional cone");
  const auto r = rng.integer_vector(c.ambient_dimension(), spread);
  // f(w) >= 1 for every constraint, so lambda >= max(-f(r)) keeps lambda*w + r
  // inside; the random offset keeps it off the boundary.
  Rational lambda = 0;
  for (const auto& f : c.constraints()) {
    const Rational need = -f.evaluate(r) / f.evaluate(fd.witness);
    if (need > lambda) lambda = need;
  }
  Rational step(rng.integer(1, 16), 8);
  step.canonicalize();
  lambda += step;
  RationalVector x(c.ambient_dimension());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = lambda * fd.witness[i] + r[i];
  if (!c.contains_strictly(x)) throw InternalError("interior sample left the cone");
  return x;
}

HCone secondary_cone(const PointConfiguration& config, const Triangulation& tri) {
  HCone cone = HCone::full_space(config);
  for (const auto& s : tri.cells) {
    for (PointIndex j = 0; j < static_cast<PointIndex>(config.size()); ++j) {
      if (!s.contains(j)) cone.add(folding_form(config, s, j));
    }
  }
  return cone;
}

HCone secondary_cone_of_ridge_graph(const PointConfiguration& config, const std::vector<Ridge>& ridges) {
  if (ridges.empty()) throw ValidationError("ridge graph is empty");
  std::set<Simplex> cells;
  for (const auto& r : ridges) {
    cells.insert(r.left());
    cells.insert(r.right());
  }
  return secondary_cone(config, Triangulation{config, {cells.begin(), cells.end()}});
}

int ridge_sign(const PointConfiguration& config, const std::vector<Ridge>& ridges, const Ridge& r,
               const HeightFunction& witness) {
  if (std::find(ridges.begin(), ridges.end(), r) == ridges.end()) {
    throw ValidationError("ridge is not part of the ridge graph");
  }
  const auto sc = secondary_cone_of_ridge_graph(config, ridges);
  if (!sc.contains_strictly(witness.values())) {
    throw BoundaryWitnessError("witness is not in the interior of the secondary cone");
  }
  const int s = sgn(edge_length_form(config, r).evaluate(witness));
  if (s == 0) throw InternalError("edge length vanished inside the secondary cone");
  return s;
}

HCone comparison_halfcone(const PointConfiguration& config, const Ridge& r1, int s1, const Ridge& r2, int s2,
                          const std::shared_ptr<const std::vector<Label>>& labels) {
  const auto f1 = edge_length_form(config, r1) * s1;
  const auto f2 = edge_length_form(config, r2) * s2;
  HCone cone(labels);
  cone.add(f1);
  cone.add(f2);
  cone.add(f2 - f1);
  return cone;
}

std::optional<HCone> comparison_cone(const PointConfiguration& config, const HCone& scR, const Ridge& r1, int s1,
                                     const Ridge& r2, int s2) {
  auto cone = comparison_halfcone(config, r1, s1, r2, s2, scR.shared_labels());
  if (!is_full_dimensional(intersect(cone, scR)).full) return std::nullopt;
  return cone;
}

}  // namespace mstfan
