#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "instances.hpp"
#include "mstfan/core.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/random.hpp"
#include "oracles.hpp"

using namespace mstfan;
using fixtures::cell;
using fixtures::heights;

namespace {

std::vector<Rational> coeffs(const LinearForm& f) { return f.coefficients(); }

std::vector<Rational> ints(std::vector<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("edge-length form of the three-point segment") {
  const auto a = fixtures::segment(3);
  const auto r = Ridge::make(a, cell(a, {"0", "1"}), cell(a, {"1", "2"}));
  CHECK(coeffs(edge_length_form(a, r)) == ints({1, -2, 1}));
  CHECK(tropical_edge_length(a, heights({0, 1, 0}), r) == 2);
  CHECK(edge_length_form(a, r).evaluate(heights({0, 0, 0})) == 0);
}

TEST_CASE("edge-length form of the square diagonal") {
  const auto sq = fixtures::square();
  const auto r = Ridge::make(sq, cell(sq, {"00", "10", "01"}), cell(sq, {"10", "01", "11"}));
  CHECK(coeffs(edge_length_form(sq, r)) == ints({1, -1, -1, 1}));
  CHECK(tropical_edge_length(sq, heights({0, 0, 0, -1}), r) == 1);
  // affine heights h(v) = 2x - 3y + 5
  CHECK(tropical_edge_length(sq, heights({5, 7, 2, 4}), r) == 0);
}

TEST_CASE("ridge normal form and malformed ridges") {
  const auto a = fixtures::segment(4);
  const auto r1 = Ridge::make(a, cell(a, {"2", "3"}), cell(a, {"1", "2"}));
  CHECK(r1.left() == cell(a, {"1", "2"}));
  CHECK(r1.left_exposed() == 1);
  CHECK(r1.right_exposed() == 3);
  CHECK(r1 == Ridge::make(a, cell(a, {"1", "2"}), cell(a, {"2", "3"})));
  CHECK_THROWS_AS(Ridge::make(a, cell(a, {"0", "1"}), cell(a, {"2", "3"})), MalformedRidgeError);
  CHECK_THROWS_AS(Ridge::make(a, cell(a, {"0", "1"}), cell(a, {"0", "1"})), MalformedRidgeError);
  CHECK_THROWS_AS(make_simplex(a, {0, 1, 2}), DegenerateSimplexError);
}

TEST_CASE("edge-length forms evaluate to the lifted determinant") {
  RationalSampler rng(7);
  for (const auto& [name, config] : fixtures::table_instances()) {
    for (const auto& r : fixtures::all_ridges(config)) {
      const auto form = edge_length_form(config, r);
      for (int k = 0; k < 3; ++k) {
        const auto h = rng.integer_vector(config.size(), 50);
        CHECK(form.evaluate(h) == oracle::lifted_det(config, r.support(), h));
      }
      for (const auto& q : form.coefficients()) CHECK(q.get_den() == 1);
    }
  }
}

TEST_CASE("folding form sign convention") {
  const auto a = fixtures::segment(3);
  const auto psi = folding_form(a, cell(a, {"0", "2"}), 1);
  CHECK(psi.evaluate(heights({0, -1, 0})) > 0);
  const auto c = coeffs(psi);
  CHECK((c == ints({1, -2, 1}) || c == ints({-1, 2, -1})));
  for (long h0 = -2; h0 <= 2; ++h0) {
    for (long h1 = -2; h1 <= 2; ++h1) {
      for (long h2 = -2; h2 <= 2; ++h2) {
        CHECK((psi.evaluate(heights({h0, h1, h2})) >= 0) == (2 * h1 <= h0 + h2));
      }
    }
  }
  const auto sq = fixtures::square();
  CHECK(folding_form(sq, cell(sq, {"00", "10", "01"}), 3).evaluate(heights({0, 0, 0, -1})) > 0);
  CHECK_THROWS_AS(folding_form(sq, cell(sq, {"00", "10", "01"}), 1), InvalidApexError);
}

TEST_CASE("folding forms measure the gap below the lifted hyperplane") {
  RationalSampler rng(13);
  for (const auto& [name, config] : fixtures::table_instances()) {
    const CandidateSet candidates(config);
    for (const auto& s : candidates.simplices()) {
      const auto h = rng.integer_vector(config.size(), 30);
      oracle::Rows base;
      for (auto v : s.vertices) base.push_back(oracle::homogeneous(config, v));
      const Rational scale = abs(oracle::det(base));
      for (PointIndex j = 0; j < static_cast<PointIndex>(config.size()); ++j) {
        if (s.contains(j)) continue;
        const Rational gap =
            oracle::interpolate(config, s.vertices, h, oracle::homogeneous(config, j)) - h[static_cast<std::size_t>(j)];
        CHECK(folding_form(config, s, j).evaluate(h) == scale * gap);
      }
    }
  }
}

TEST_CASE("fundamental circuits") {
  const auto a = fixtures::segment(3);
  const auto z = fundamental_circuit(a, Ridge::make(a, cell(a, {"0", "1"}), cell(a, {"1", "2"})));
  CHECK(z.positive == std::vector<PointIndex>{0, 2});
  CHECK(z.negative == std::vector<PointIndex>{1});

  const auto sq = fixtures::square();
  const auto d = fundamental_circuit(sq, Ridge::make(sq, cell(sq, {"00", "10", "01"}), cell(sq, {"10", "01", "11"})));
  CHECK(d.positive == std::vector<PointIndex>{0, 3});
  CHECK(d.negative == std::vector<PointIndex>{1, 2});
}

TEST_CASE("circuit of a ridge is the unique circuit inside it") {
  for (const auto& [name, config] : fixtures::table_instances()) {
    for (const auto& r : fixtures::all_ridges(config)) {
      const auto z = fundamental_circuit(config, r);
      const auto brute = oracle::circuits(config, r.support());
      REQUIRE(brute.size() == 1);
      CHECK(z.support() == brute.front());
      CHECK(z.positive.front() == z.support().front());
    }
  }
}

TEST_CASE("ridges sharing a circuit have the same form up to sign") {
  for (auto config : {generate("cube 3"), generate("crosspoly 3"), generate("prism 3"), generate("ngon 6")}) {
    std::map<std::vector<PointIndex>, LinearForm> seen;
    std::size_t shared = 0;
    for (const auto& r : fixtures::all_ridges(config)) {
      const auto form = edge_length_form(config, r);
      auto [it, fresh] = seen.emplace(form.support(), form);
      if (!fresh) {
        ++shared;
        CHECK(same_up_to_sign(it->second, form));
      }
    }
    CHECK(shared > 0);
  }
}

TEST_CASE("normalized volumes") {
  const auto cube = generate("cube 3");
  CHECK(normalized_volume(cube, std::vector<PointIndex>{0, 1, 2, 4}) == 1);
  CHECK(normalized_volume(cube, std::vector<PointIndex>{1, 2, 4, 7}) == 2);
  const PointConfiguration seg(1, {{0}, {2}}, {"a", "b"});
  CHECK(normalized_volume(seg, std::vector<PointIndex>{0, 1}) == 2);
  const auto sq = fixtures::square();
  CHECK(normalized_volume(sq, std::vector<PointIndex>{0, 1, 2}) == 1);
  CHECK(normalized_volume(sq, std::vector<PointIndex>{1, 2}) == 1);
  CHECK(normalized_volume(sq, std::vector<PointIndex>{3}) == 1);
  CHECK_THROWS_AS(normalized_volume(fixtures::segment(3), std::vector<PointIndex>{0, 1, 2}), DegenerateSimplexError);

  // lattice length of a segment is the gcd of its edge vector
  const PointConfiguration grid(2, {{0, 0}, {4, 6}, {3, 0}, {0, 5}}, {"a", "b", "c", "d"});
  CHECK(normalized_volume(grid, std::vector<PointIndex>{0, 1}) == std::gcd(4, 6));
  CHECK(normalized_volume(grid, std::vector<PointIndex>{2, 3}) == 1);
  CHECK(normalized_volume(grid, std::vector<PointIndex>{0, 2, 3}) == 15);
}

TEST_CASE("epistatic weights") {
  const auto sq = fixtures::square();
  const auto diag = Ridge::make(sq, cell(sq, {"00", "10", "01"}), cell(sq, {"10", "01", "11"}));
  CHECK(epistatic_weight(sq, heights({0, 0, 0, -1}), diag) == 1);
  CHECK(epistatic_weight(sq, heights({1, 2, 3, 4}), diag) == 0);

  const auto a = fixtures::segment(3);
  CHECK(epistatic_weight(a, heights({0, 1, 0}), Ridge::make(a, cell(a, {"0", "1"}), cell(a, {"1", "2"}))) == 2);

  RationalSampler rng(17);
  for (const auto& r : fixtures::all_ridges(generate("cube 3"))) {
    const auto cube = generate("cube 3");
    std::set<Rational> ratios;
    for (int k = 0; k < 5; ++k) {
      const HeightFunction h(rng.integer_vector(cube.size(), 40));
      const Rational length = tropical_edge_length(cube, h, r);
      if (length != 0) ratios.insert(epistatic_weight(cube, h, r) / length);
    }
    CHECK(ratios.size() <= 1);
  }
}
