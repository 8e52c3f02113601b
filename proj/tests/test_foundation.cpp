#include <doctest.h>

#include "mstfan/errors.hpp"
#include "mstfan/lp.hpp"
#include "mstfan/matrix.hpp"
#include "mstfan/random.hpp"
#include "oracles.hpp"

using namespace mstfan;

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-0/5")) == "0");
  CHECK(to_string(parse_rational("-4/8")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("4/-8"), ValidationError);
  CHECK(to_string(parse_rational("17")) == "17");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("x"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);

  RationalSampler rng(3);
  for (int i = 0; i < 200; ++i) {
    const Rational q = rng.rational(1000000, 1000);
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  RationalSampler rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 5));
    Matrix m(n, n);
    oracle::Rows rows(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        // sparse entries make singular matrices common
        m(r, c) = rows[r][c] = rng.integer(0, 2) == 0 ? Rational(0) : rng.rational(5, 3);
      }
    }
    CHECK(determinant(m) == oracle::det(rows));
  }
}

TEST_CASE("rank, kernel and solve") {
  Matrix m(2, 3);
  m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
  m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 6;
  CHECK(rank(m) == 1);
  const auto ker = kernel(m);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);

  RationalSampler rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix a(3, 3);
    RationalVector x(3);
    for (std::size_t r = 0; r < 3; ++r) {
      x[r] = rng.rational(9, 4);
      for (std::size_t c = 0; c < 3; ++c) a(r, c) = rng.integer(-3, 3);
    }
    RationalVector b(3);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) b[r] += a(r, c) * x[c];
    }
    const auto got = solve(a, b);
    if (determinant(a) == 0) {
      CHECK(!got);
    } else {
      REQUIRE(got);
      CHECK(*got == x);
    }
  }
}

namespace {

// Best vertex of {rows x >= rhs} in R^2 by intersecting every pair of lines.
std::optional<Rational> brute_max_2d(const Matrix& rows, const RationalVector& rhs, const RationalVector& c) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (std::size_t j = i + 1; j < rows.rows(); ++j) {
      const Rational d = rows(i, 0) * rows(j, 1) - rows(i, 1) * rows(j, 0);
      if (d == 0) continue;
      const RationalVector x{(rhs[i] * rows(j, 1) - rows(i, 1) * rhs[j]) / d,
                             (rows(i, 0) * rhs[j] - rhs[i] * rows(j, 0)) / d};
      bool feasible = true;
      for (std::size_t k = 0; k < rows.rows(); ++k) {
        if (rows(k, 0) * x[0] + rows(k, 1) * x[1] < rhs[k]) feasible = false;
      }
      if (!feasible) continue;
      const Rational v = c[0] * x[0] + c[1] * x[1];
      if (!best || v > *best) best = v;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("simplex matches vertex enumeration on random bounded 2-d programs") {
  RationalSampler rng(21);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto extra = static_cast<std::size_t>(rng.integer(1, 5));
    Matrix rows(4 + extra, 2);
    RationalVector rhs(4 + extra);
    // box |x|, |y| <= 10 keeps every program bounded
    rows(0, 0) = 1, rhs[0] = -10;
    rows(1, 0) = -1, rhs[1] = -10;
    rows(2, 1) = 1, rhs[2] = -10;
    rows(3, 1) = -1, rhs[3] = -10;
    for (std::size_t k = 4; k < rows.rows(); ++k) {
      rows(k, 0) = rng.integer(-4, 4);
      rows(k, 1) = rng.integer(-4, 4);
      rhs[k] = rng.integer(-12, 12);
    }
    const RationalVector c{rng.integer(-5, 5), rng.integer(-5, 5)};
    const auto lp = maximize(rows, rhs, c);
    const auto expected = brute_max_2d(rows, rhs, c);
    if (expected) {
      REQUIRE(lp.status == LpStatus::optimal);
      CHECK(lp.value == *expected);
      ++optimal;
    } else {
      CHECK(lp.status == LpStatus::infeasible);
      ++infeasible;
    }
  }
  CHECK(optimal > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("simplex detects unbounded programs and degenerate vertices") {
  Matrix rows(2, 2);
  rows(0, 0) = 1;
  rows(1, 1) = 1;
  const auto lp = maximize(rows, {0, 0}, {1, 1});
  CHECK(lp.status == LpStatus::unbounded);

  // many constraints through the origin: degenerate, Bland's rule must stop
  Matrix cone(6, 3);
  const int coeffs[6][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 3; ++c) cone(r, c) = coeffs[r][c];
  }
  Matrix capped(7, 3);
  RationalVector rhs(7);
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 3; ++c) capped(r, c) = cone(r, c);
  }
  capped(6, 0) = capped(6, 1) = capped(6, 2) = -1;
  rhs[6] = -3;
  const auto best = maximize(capped, rhs, {1, 1, 1});
  REQUIRE(best.status == LpStatus::optimal);
  CHECK(best.value == 3);
  CHECK(find_feasible(cone, RationalVector(6, Rational(0))).has_value());
}
