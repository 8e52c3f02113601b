#include "mstfan/config.hpp"

#include <algorithm>
#include <set>

#include "mstfan/core.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/matrix.hpp"

namespace mstfan {

PointConfiguration::PointConfiguration(int dim, std::vector<IntPoint> points, std::vector<Label> labels)
    : dim_(dim), points_(std::move(points)), labels_(std::move(labels)) {
  if (dim_ < 1) throw ValidationError("configuration dimension must be positive");
  if (points_.size() != labels_.size()) throw ValidationError("number of labels differs from number of points");
  if (points_.size() > 64) throw ScaleGuardError("configurations are limited to 64 points");
  if (points_.size() < static_cast<std::size_t>(dim_) + 1) {
    throw ValidationError("a configuration in dimension n needs at least n+1 points");
  }
  for (const auto& p : points_) {
    if (p.size() != static_cast<std::size_t>(dim_)) throw ValidationError("point has wrong dimension");
  }
  std::set<IntPoint> seen(points_.begin(), points_.end());
  if (seen.size() != points_.size()) throw ValidationError("configuration points are not distinct");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], static_cast<PointIndex>(i)).second) {
      throw ValidationError("duplicate label '" + labels_[i] + "'");
    }
  }
  Matrix m(points_.size(), static_cast<std::size_t>(dim_) + 1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    m(i, 0) = 1;
    for (int k = 0; k < dim_; ++k) m(i, static_cast<std::size_t>(k) + 1) = static_cast<long>(points_[i][static_cast<std::size_t>(k)]);
  }
  if (rank(m) != static_cast<std::size_t>(dim_) + 1) {
    throw ValidationError("configuration does not affinely span its ambient space");
  }
}

PointIndex PointConfiguration::index_of(const Label& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ValidationError("unknown label '" + label + "'");
  return it->second;
}

HeightFunction HeightFunction::from_labels(const PointConfiguration& config, const std::map<Label, Rational>& values) {
  if (values.size() != config.size()) throw ValidationError("height function must assign every label exactly once");
  RationalVector v(config.size());
  for (const auto& [label, value] : values) v[static_cast<std::size_t>(config.index_of(label))] = value;
  return HeightFunction(std::move(v));
}

bool Simplex::contains(PointIndex i) const { return std::binary_search(vertices.begin(), vertices.end(), i); }

std::uint64_t Simplex::mask() const {
  std::uint64_t m = 0;
  for (auto v : vertices) m |= std::uint64_t{1} << v;
  return m;
}

Simplex make_simplex(const PointConfiguration& config, std::vector<PointIndex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  if (vertices.size() != static_cast<std::size_t>(config.dim()) + 1) {
    throw DegenerateSimplexError("a maximal simplex needs n+1 vertices");
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || static_cast<std::size_t>(vertices[i]) >= config.size()) {
      throw ValidationError("simplex vertex out of range");
    }
    if (i > 0 && vertices[i] == vertices[i - 1]) throw DegenerateSimplexError("repeated simplex vertex");
  }
  if (!affinely_independent(config, vertices)) throw DegenerateSimplexError("simplex vertices are affinely dependent");
  return Simplex{std::move(vertices)};
}

std::string to_string(const PointConfiguration& config, const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    if (i) out += ",";
    out += config.label(s.vertices[i]);
  }
  return out + "}";
}

Ridge Ridge::make(const PointConfiguration& config, Simplex a, Simplex b) {
  const auto n1 = static_cast<std::size_t>(config.dim()) + 1;
  if (a.vertices.size() != n1 || b.vertices.size() != n1) throw MalformedRidgeError("ridge cells must have n+1 vertices");
  for (const auto* s : {&a, &b}) {
    if (!std::is_sorted(s->vertices.begin(), s->vertices.end()) || !affinely_independent(config, s->vertices)) {
      throw MalformedRidgeError("ridge cell is not a simplex of the configuration");
    }
  }
  if (a == b) throw MalformedRidgeError("ridge cells must be distinct");
  std::vector<PointIndex> shared;
  std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                        std::back_inserter(shared));
  if (shared.size() != n1 - 1) throw MalformedRidgeError("ridge cells must share exactly n vertices");
  PointIndex ea = -1;
  PointIndex eb = -1;
  for (auto v : a.vertices) {
    if (!b.contains(v)) ea = v;
  }
  for (auto v : b.vertices) {
    if (!a.contains(v)) eb = v;
  }
  Ridge r;
  if (ea < eb) {
    r.left_ = std::move(a);
    r.right_ = std::move(b);
    r.left_exposed_ = ea;
    r.right_exposed_ = eb;
  } else {
    r.left_ = std::move(b);
    r.right_ = std::move(a);
    r.left_exposed_ = eb;
    r.right_exposed_ = ea;
  }
  return r;
}

std::vector<PointIndex> Ridge::support() const {
  std::vector<PointIndex> u;
  std::set_union(left_.vertices.begin(), left_.vertices.end(), right_.vertices.begin(), right_.vertices.end(),
                 std::back_inserter(u));
  return u;
}

std::vector<PointIndex> Ridge::facet() const {
  std::vector<PointIndex> u;
  std::set_intersection(left_.vertices.begin(), left_.vertices.end(), right_.vertices.begin(), right_.vertices.end(),
                        std::back_inserter(u));
  return u;
}

std::string to_string(const PointConfiguration& config, const Ridge& r) {
  return "(" + to_string(config, r.left()) + "|" + to_string(config, r.right()) + ")";
}

std::vector<PointIndex> LinearForm::support() const {
  std::vector<PointIndex> s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) s.push_back(static_cast<PointIndex>(i));
  }
  return s;
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

LinearForm LinearForm::operator-() const {
  LinearForm out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = -coeffs_[i];
  return out;
}

LinearForm LinearForm::operator+(const LinearForm& other) const {
  LinearForm out(coeffs_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += other.coeffs_[i];
  return out;
}

LinearForm LinearForm::operator-(const LinearForm& other) const {
  LinearForm out(coeffs_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= other.coeffs_[i];
  return out;
}

LinearForm LinearForm::operator*(const Rational& factor) const {
  LinearForm out(coeffs_);
  for (auto& c : out.coeffs_) c *= factor;
  return out;
}

bool LinearForm::operator<(const LinearForm& other) const {
  return std::lexicographical_compare(coeffs_.begin(), coeffs_.end(), other.coeffs_.begin(), other.coeffs_.end());
}

bool same_up_to_sign(const LinearForm& f, const LinearForm& g) { return f == g || f == -g; }

LinearForm primitive(const LinearForm& f) {
  Integer lcm_den = 1;
  for (const auto& c : f.coefficients()) {
    if (sgn(c) != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer g = 0;
  RationalVector scaled(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    scaled[i] = f[i] * lcm_den;
    if (sgn(scaled[i]) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled[i].get_num_mpz_t());
  }
  if (g == 0) return f;
  for (auto& c : scaled) c /= g;
  return LinearForm(std::move(scaled));
}

std::vector<PointIndex> SignedCircuit::support() const {
  std::vector<PointIndex> u;
  std::set_union(positive.begin(), positive.end(), negative.begin(), negative.end(), std::back_inserter(u));
  return u;
}

}  // namespace mstfan
