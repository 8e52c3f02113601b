#include "mstfan/epistasis.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "mstfan/core.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/lp.hpp"
#include "mstfan/random.hpp"

namespace mstfan {

namespace {

// Rows encoding p >= 0, sum p = 1, sum p_a a = w (equalities as two rows).
void fiber_rows(const PointConfiguration& config, const RationalVector& w, Matrix& rows, RationalVector& rhs) {
  const std::size_t m = config.size();
  const auto n = static_cast<std::size_t>(config.dim());
  rows = Matrix(m + 2 * (n + 1), m);
  rhs.assign(rows.rows(), Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    rows(i, i) = 1;
    rows(m, i) = 1;
    rows(m + 1, i) = -1;
    for (std::size_t k = 0; k < n; ++k) {
      rows(m + 2 + 2 * k, i) = static_cast<long>(config.point(static_cast<PointIndex>(i))[k]);
      rows(m + 3 + 2 * k, i) = -static_cast<long>(config.point(static_cast<PointIndex>(i))[k]);
    }
  }
  rhs[m] = 1;
  rhs[m + 1] = -1;
  for (std::size_t k = 0; k < n; ++k) {
    rhs[m + 2 + 2 * k] = w[k];
    rhs[m + 3 + 2 * k] = -w[k];
  }
}

}  // namespace

RationalVector edge_weights(const PointConfiguration& config, const HeightFunction& h, const DualGraph& g,
                            WeightKind kind) {
  RationalVector w;
  w.reserve(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    Rational length = abs(g.forms[e].evaluate(h));
    if (kind == WeightKind::epistatic) length *= volume_factor(config, g.edges[e]);
    w.push_back(std::move(length));
  }
  return w;
}

OrderedSpanningTree Filtration::critical_tree() const {
  OrderedSpanningTree t;
  for (const auto& s : steps) {
    if (s.critical) t.edges.push_back(s.edge);
  }
  return t;
}

Filtration epistatic_filtration(const PointConfiguration& config, const HeightFunction& h, WeightKind kind) {
  const CandidateSet candidates(config);
  const auto report = is_generic(candidates, h);
  if (!report.generic) throw GenericityError("height function is not generic", report.witness);
  Filtration f{regular_triangulation(candidates, h), {}, kind, {}};
  f.graph = dual_graph(f.triangulation, h);
  const auto weights = edge_weights(config, h, f.graph, kind);
  std::vector<int> order(f.graph.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return weights[static_cast<std::size_t>(a)] < weights[static_cast<std::size_t>(b)];
  });
  // cluster[v]: current merge-tree node holding cell v
  const auto cells = static_cast<int>(f.graph.nodes.size());
  std::vector<int> cluster(static_cast<std::size_t>(cells));
  std::iota(cluster.begin(), cluster.end(), 0);
  int next = cells;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int e = order[k];
    FiltrationStep step;
    step.edge = e;
    step.weight = weights[static_cast<std::size_t>(e)];
    step.forced_tie = k > 0 && same_up_to_sign(f.graph.forms[static_cast<std::size_t>(e)],
                                               f.graph.forms[static_cast<std::size_t>(order[k - 1])]);
    const auto [a, b] = f.graph.endpoints[static_cast<std::size_t>(e)];
    const int ca = cluster[static_cast<std::size_t>(a)];
    const int cb = cluster[static_cast<std::size_t>(b)];
    if (ca != cb) {
      step.critical = true;
      step.merged_left = std::min(ca, cb);
      step.merged_right = std::max(ca, cb);
      for (auto& c : cluster) {
        if (c == ca || c == cb) c = next;
      }
      ++next;
    }
    f.steps.push_back(std::move(step));
  }
  return f;
}

MergeTree merge_tree(const Filtration& f) {
  MergeTree t;
  t.leaves = f.graph.nodes;
  t.nodes.resize(t.leaves.size());
  for (const auto& s : f.steps) {
    if (!s.critical) continue;
    const int id = static_cast<int>(t.nodes.size());
    MergeTree::Node node;
    node.left = s.merged_left;
    node.right = s.merged_right;
    node.edge = s.edge;
    node.weight = s.weight;
    t.nodes[static_cast<std::size_t>(s.merged_left)].parent = id;
    t.nodes[static_cast<std::size_t>(s.merged_right)].parent = id;
    t.nodes.push_back(std::move(node));
  }
  if (t.nodes.size() + 1 != 2 * t.leaves.size()) throw InternalError("merge tree is not binary over all cells");
  t.root = static_cast<int>(t.nodes.size()) - 1;
  return t;
}

Rational leaf_distance(const DualGraph& g, const OrderedSpanningTree& tree, const RationalVector& weights, int a,
                       int b) {
  const auto n = static_cast<int>(g.nodes.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw ValidationError("unknown tree node");
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int e : tree.edges) {
    const auto [x, y] = g.endpoints[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(x)].emplace_back(y, e);
    adj[static_cast<std::size_t>(y)].emplace_back(x, e);
  }
  std::function<std::optional<Rational>(int, int)> walk = [&](int v, int from) -> std::optional<Rational> {
    if (v == b) return Rational(0);
    for (const auto& [u, e] : adj[static_cast<std::size_t>(v)]) {
      if (u == from) continue;
      if (auto d = walk(u, v)) return *d + weights[static_cast<std::size_t>(e)];
    }
    return std::nullopt;
  };
  auto d = walk(a, -1);
  if (!d) throw ValidationError("nodes are not connected by the tree");
  return *d;
}

std::optional<Rational> support_function_lp(const PointConfiguration& config, const HeightFunction& h,
                                            const RationalVector& w) {
  Matrix rows;
  RationalVector rhs;
  fiber_rows(config, w, rows, rhs);
  const auto lp = maximize(rows, rhs, h.values());
  if (lp.status != LpStatus::optimal) return std::nullopt;
  return lp.value;
}

SupportValue eval_support_function(const PointConfiguration& config, const HeightFunction& h, const Triangulation& tri,
                                   const RationalVector& w, std::size_t checks) {
  const auto n = static_cast<std::size_t>(config.dim());
  if (w.size() != n) throw ValidationError("point has wrong dimension");
  auto cells = tri.cells;
  std::sort(cells.begin(), cells.end());
  for (const auto& cell : cells) {
    // barycentric coordinates: sum b_i (1, v_i) = (1, w)
    Matrix a(n + 1, n + 1);
    RationalVector rhs(n + 1);
    rhs[0] = 1;
    for (std::size_t i = 0; i <= n; ++i) {
      a(0, i) = 1;
      for (std::size_t k = 0; k < n; ++k) a(k + 1, i) = static_cast<long>(config.point(cell.vertices[i])[k]);
    }
    for (std::size_t k = 0; k < n; ++k) rhs[k + 1] = w[k];
    const auto bary = solve(std::move(a), std::move(rhs));
    if (!bary) throw InternalError("cell is degenerate");
    if (std::any_of(bary->begin(), bary->end(), [](const Rational& q) { return sgn(q) < 0; })) continue;
    SupportValue out{0, RationalVector(config.size()), cell};
    for (std::size_t i = 0; i <= n; ++i) {
      out.population[static_cast<std::size_t>(cell.vertices[i])] = (*bary)[i];
      out.value += (*bary)[i] * h[cell.vertices[i]];
    }
    if (checks > 0) {
      Matrix rows;
      RationalVector fiber_rhs;
      fiber_rows(config, w, rows, fiber_rhs);
      RationalSampler rng(0xf1bu);
      for (std::size_t c = 0; c < checks; ++c) {
        const auto lp = maximize(rows, fiber_rhs, rng.integer_vector(config.size(), 10));
        if (lp.status != LpStatus::optimal) throw InternalError("fiber LP did not reach an optimum");
        if (dot(h.values(), lp.x) > out.value) throw InternalError("population beats the support function");
      }
    }
    return out;
  }
  throw InfeasibleError("point lies outside the convex hull of the configuration");
}

}  // namespace mstfan
