#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mstfan/rational.hpp"

namespace mstfan {

using Label = std::string;
// Position of a point in its configuration. All label-keyed data is stored
// densely in this order, which is also the canonical label order.
using PointIndex = int;
using IntPoint = std::vector<long long>;

// Labeled integer points in Z^n. Immutable after construction; the
// constructor rejects duplicate points or labels and configurations that do
// not affinely span R^n.
class PointConfiguration {
 public:
  PointConfiguration(int dim, std::vector<IntPoint> points, std::vector<Label> labels);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const IntPoint& point(PointIndex i) const { return points_[static_cast<std::size_t>(i)]; }
  const Label& label(PointIndex i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<IntPoint>& points() const { return points_; }
  const std::vector<Label>& labels() const { return labels_; }

  // Throws ValidationError for an unknown label.
  PointIndex index_of(const Label& label) const;

  bool operator==(const PointConfiguration& other) const {
    return dim_ == other.dim_ && points_ == other.points_ && labels_ == other.labels_;
  }

 private:
  int dim_;
  std::vector<IntPoint> points_;
  std::vector<Label> labels_;
  std::unordered_map<Label, PointIndex> index_;
};

// h : A -> Q, stored in configuration order.
class HeightFunction {
 public:
  HeightFunction() = default;
  explicit HeightFunction(RationalVector values) : values_(std::move(values)) {}

  // Throws ValidationError unless the keys are exactly the labels of `config`.
  static HeightFunction from_labels(const PointConfiguration& config, const std::map<Label, Rational>& values);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](PointIndex i) const { return values_[static_cast<std::size_t>(i)]; }
  const RationalVector& values() const { return values_; }

  bool operator==(const HeightFunction&) const = default;

 private:
  RationalVector values_;
};

// Maximal simplex: n+1 affinely independent points, sorted by index.
struct Simplex {
  std::vector<PointIndex> vertices;

  bool contains(PointIndex i) const;
  std::uint64_t mask() const;
  auto operator<=>(const Simplex&) const = default;
};

// Sorts the vertices and checks affine independence.
Simplex make_simplex(const PointConfiguration& config, std::vector<PointIndex> vertices);

std::string to_string(const PointConfiguration& config, const Simplex& s);

// Pair of maximal simplices sharing a facet, in normal form: `left` holds the
// smaller of the two exposed (non-shared) points.
class Ridge {
 public:
  // Throws MalformedRidgeError unless a and b are distinct simplices of the
  // configuration sharing exactly n vertices.
  static Ridge make(const PointConfiguration& config, Simplex a, Simplex b);

  const Simplex& left() const { return left_; }
  const Simplex& right() const { return right_; }
  PointIndex left_exposed() const { return left_exposed_; }
  PointIndex right_exposed() const { return right_exposed_; }

  // The n+2 points of the bipyramid, sorted.
  std::vector<PointIndex> support() const;
  // The n shared points, sorted.
  std::vector<PointIndex> facet() const;

  auto operator<=>(const Ridge& other) const {
    if (auto c = left_ <=> other.left_; c != 0) return c;
    return right_ <=> other.right_;
  }
  bool operator==(const Ridge& other) const { return left_ == other.left_ && right_ == other.right_; }

 private:
  Simplex left_;
  Simplex right_;
  PointIndex left_exposed_ = -1;
  PointIndex right_exposed_ = -1;
};

std::string to_string(const PointConfiguration& config, const Ridge& r);

// Linear form on R^A with dense coefficients in configuration order.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::size_t n) : coeffs_(n) {}
  explicit LinearForm(RationalVector coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const RationalVector& coefficients() const { return coeffs_; }

  Rational evaluate(const RationalVector& x) const { return dot(coeffs_, x); }
  Rational evaluate(const HeightFunction& h) const { return dot(coeffs_, h.values()); }

  std::vector<PointIndex> support() const;
  bool is_zero() const;

  LinearForm operator-() const;
  LinearForm operator+(const LinearForm& other) const;
  LinearForm operator-(const LinearForm& other) const;
  LinearForm operator*(const Rational& factor) const;

  bool operator==(const LinearForm&) const = default;
  // Lexicographic on coefficients; used for canonical sorting only.
  bool operator<(const LinearForm& other) const;

 private:
  RationalVector coeffs_;
};

// f == g or f == -g.
bool same_up_to_sign(const LinearForm& f, const LinearForm& g);

// Positive rescaling to coprime integer coefficients. Zero stays zero.
LinearForm primitive(const LinearForm& f);

// Circuit of the affine matroid with its sign split.
struct SignedCircuit {
  std::vector<PointIndex> positive;
  std::vector<PointIndex> negative;

  std::vector<PointIndex> support() const;
  SignedCircuit negated() const { return {negative, positive}; }
  bool operator==(const SignedCircuit&) const = default;
};

}  // namespace mstfan
