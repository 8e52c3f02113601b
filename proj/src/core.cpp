#include "mstfan/core.hpp"

#include <algorithm>

#include "mstfan/errors.hpp"
#include "mstfan/matrix.hpp"

namespace mstfan {

namespace {

// Rows (1, v) for the given points, optionally skipping one row.
Matrix homogenized(const PointConfiguration& config, std::span<const PointIndex> vertices, std::size_t skip) {
  const auto cols = static_cast<std::size_t>(config.dim()) + 1;
  Matrix m(vertices.size() - (skip < vertices.size() ? 1 : 0), cols);
  std::size_t r = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i == skip) continue;
    m(r, 0) = 1;
    const auto& p = config.point(vertices[i]);
    for (std::size_t k = 0; k + 1 < cols; ++k) m(r, k + 1) = static_cast<long>(p[k]);
    ++r;
  }
  return m;
}

// Cofactors along the height column of the (k+1)x(k+1) lifted matrix whose
// rows are (1, v_i, h_i) in the given order, with k = n+1.
RationalVector height_cofactors(const PointConfiguration& config, std::span<const PointIndex> rows) {
  const std::size_t last = rows.size() - 1;
  RationalVector cof(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational minor = determinant(homogenized(config, rows, i));
    cof[i] = ((i + last) % 2 == 0) ? minor : Rational(-minor);
  }
  return cof;
}

}  // namespace

Rational orientation(const PointConfiguration& config, std::span<const PointIndex> vertices) {
  if (vertices.size() != static_cast<std::size_t>(config.dim()) + 1) {
    throw InternalError("orientation needs n+1 points");
  }
  return determinant(homogenized(config, vertices, vertices.size()));
}

bool affinely_independent(const PointConfiguration& config, std::span<const PointIndex> vertices) {
  if (vertices.size() > static_cast<std::size_t>(config.dim()) + 1) return false;
  return rank(homogenized(config, vertices, vertices.size())) == vertices.size();
}

LinearForm edge_length_form(const PointConfiguration& config, const Ridge& r) {
  const auto rows = r.support();
  const auto cof = height_cofactors(config, rows);
  LinearForm form(config.size());
  for (std::size_t i = 0; i < rows.size(); ++i) form[static_cast<std::size_t>(rows[i])] = cof[i];
  return form;
}

Rational tropical_edge_length(const PointConfiguration& config, const HeightFunction& h, const Ridge& r) {
  return abs(edge_length_form(config, r).evaluate(h));
}

LinearForm folding_form(const PointConfiguration& config, const Simplex& s, PointIndex j) {
  if (s.contains(j)) throw InvalidApexError("apex " + config.label(j) + " is a vertex of the simplex");
  std::vector<PointIndex> rows = s.vertices;
  rows.push_back(j);
  const auto cof = height_cofactors(config, rows);
  // The cofactor of the apex row is det L~(s); flipping by its sign makes the
  // apex coefficient -|det L~(s)|, i.e. Psi >= 0 means "on or below".
  const int flip = -sgn(cof.back());
  LinearForm form(config.size());
  for (std::size_t i = 0; i < rows.size(); ++i) form[static_cast<std::size_t>(rows[i])] = cof[i] * flip;
  return form;
}

SignedCircuit fundamental_circuit(const PointConfiguration& config, const Ridge& r) {
  const auto form = edge_length_form(config, r);
  const auto support = form.support();
  if (support.empty()) throw InternalError("edge-length form of a ridge vanished");
  const int normalize = sgn(form[static_cast<std::size_t>(support.front())]);
  SignedCircuit z;
  for (auto v : support) {
    (sgn(form[static_cast<std::size_t>(v)]) * normalize > 0 ? z.positive : z.negative).push_back(v);
  }
  return z;
}

Rational normalized_volume(const PointConfiguration& config, std::span<const PointIndex> vertices) {
  if (vertices.empty()) throw DegenerateSimplexError("empty simplex");
  const std::size_t k = vertices.size() - 1;
  if (k == 0) return 1;
  const auto n = static_cast<std::size_t>(config.dim());
  if (k > n) throw DegenerateSimplexError("too many vertices for an affinely independent set");
  const auto& base = config.point(vertices[0]);
  // gcd over all k x k minors, choosing k of the n columns.
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  Integer g = 0;
  do {
    Matrix m(k, k);
    std::size_t c = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!pick[col]) continue;
      for (std::size_t row = 0; row < k; ++row) {
        m(row, c) = static_cast<long>(config.point(vertices[row + 1])[col] - base[col]);
      }
      ++c;
    }
    const Rational det = determinant(std::move(m));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_num_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (g == 0) throw DegenerateSimplexError("simplex vertices are affinely dependent");
  return Rational(g);
}

Rational volume_factor(const PointConfiguration& config, const Ridge& r) {
  const auto shared = r.facet();
  return normalized_volume(config, shared) /
         (normalized_volume(config, r.left().vertices) * normalized_volume(config, r.right().vertices));
}

Rational epistatic_weight(const PointConfiguration& config, const HeightFunction& h, const Ridge& r) {
  return tropical_edge_length(config, h, r) * volume_factor(config, r);
}

}  // namespace mstfan
