#include "mstfan/mst_fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "mstfan/core.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/matroid.hpp"

namespace mstfan {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

void check_spanning_tree(const DualGraph& g, const OrderedSpanningTree& t) {
  if (t.edges.size() + 1 != g.nodes.size()) throw ValidationError("ordered tree must have #nodes - 1 edges");
  UnionFind uf(g.nodes.size());
  for (int e : t.edges) {
    if (e < 0 || static_cast<std::size_t>(e) >= g.edges.size()) throw ValidationError("tree edge index out of range");
    const auto [a, b] = g.endpoints[static_cast<std::size_t>(e)];
    if (!uf.unite(a, b)) throw ValidationError("ordered tree contains a cycle");
  }
}

// cut[r] = position at which the endpoints of non-tree edge r get connected.
std::vector<int> cut_positions(const DualGraph& g, const OrderedSpanningTree& t) {
  std::vector<int> cut(g.edges.size(), -1);
  UnionFind uf(g.nodes.size());
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const auto [a, b] = g.endpoints[static_cast<std::size_t>(t.edges[k])];
    uf.unite(a, b);
    for (std::size_t r = 0; r < g.edges.size(); ++r) {
      if (cut[r] >= 0 || t.contains(static_cast<int>(r))) continue;
      const auto [x, y] = g.endpoints[r];
      if (uf.find(x) == uf.find(y)) cut[r] = static_cast<int>(k);
    }
  }
  return cut;
}

Integer factorial(std::size_t m) {
  Integer f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

}  // namespace

bool OrderedSpanningTree::contains(int e) const { return std::find(edges.begin(), edges.end(), e) != edges.end(); }

InstabilityPartition instability_partition(const DualGraph& g, const OrderedSpanningTree& t) {
  InstabilityPartition p;
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const bool tied = k > 0 && same_up_to_sign(g.forms[static_cast<std::size_t>(t.edges[k])],
                                               g.forms[static_cast<std::size_t>(t.edges[k - 1])]);
    if (tied) {
      p.ranges.back().second = static_cast<int>(k);
    } else {
      p.ranges.emplace_back(static_cast<int>(k), static_cast<int>(k));
    }
  }
  return p;
}

std::vector<int> stable_edges(const DualGraph& g, const OrderedSpanningTree& t) {
  std::vector<int> out;
  for (const auto& [a, b] : instability_partition(g, t).ranges) {
    if (a == b) out.push_back(a);
  }
  return out;
}

GreedyResult greedy_mst(const DualGraph& g, const RationalVector& weights) {
  if (weights.size() != g.edges.size()) throw ValidationError("one weight per dual edge expected");
  std::vector<int> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return weights[static_cast<std::size_t>(a)] < weights[static_cast<std::size_t>(b)];
  });
  GreedyResult out;
  UnionFind uf(g.nodes.size());
  for (int e : order) {
    const auto [a, b] = g.endpoints[static_cast<std::size_t>(e)];
    if (uf.unite(a, b)) out.tree.edges.push_back(e);
  }
  if (out.tree.edges.size() + 1 != g.nodes.size()) throw InternalError("dual graph is disconnected");
  out.partition = instability_partition(g, out.tree);
  return out;
}

CutEdge cut_edge(const DualGraph& g, const OrderedSpanningTree& t, int r) {
  if (r < 0 || static_cast<std::size_t>(r) >= g.edges.size()) throw ValidationError("edge index out of range");
  if (t.contains(r)) throw ValidationError("cut edges are defined for non-tree edges only");
  const auto cut = cut_positions(g, t);
  const int k = cut[static_cast<std::size_t>(r)];
  if (k < 0) throw ValidationError("ordered tree does not span the endpoints of the edge");
  return {k, t.edges[static_cast<std::size_t>(k)]};
}

bool is_possible_mst_at(const DualGraph& g, const RationalVector& weights, const OrderedSpanningTree& t) {
  check_spanning_tree(g, t);
  auto w = [&](int e) -> const Rational& { return weights[static_cast<std::size_t>(e)]; };
  for (std::size_t k = 1; k < t.edges.size(); ++k) {
    if (w(t.edges[k]) < w(t.edges[k - 1])) return false;
  }
  const auto cut = cut_positions(g, t);
  for (std::size_t r = 0; r < g.edges.size(); ++r) {
    if (cut[r] < 0) continue;
    if (w(static_cast<int>(r)) < w(t.edges[static_cast<std::size_t>(cut[r])])) return false;
  }
  return true;
}

MstFanContext::MstFanContext(Triangulation tri, HeightFunction h)
    : tri_(std::move(tri)), h_(std::move(h)), graph_(dual_graph(tri_, h_)), sc_(HCone::full_space(tri_.config)) {
  const auto sc = secondary_cone(tri_.config, tri_);
  if (!sc.contains_strictly(h_.values())) {
    throw BoundaryWitnessError("heights are not in the interior of the secondary cone");
  }
  sc_ = irredundant(sc);
  for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
    const int s = sgn(graph_.forms[e].evaluate(h_));
    if (s == 0) throw GenericityError("edge length vanishes", to_string(tri_.config, graph_.edges[e]));
    signs_.push_back(s);
    signed_.push_back(graph_.forms[e] * s);
  }
  ties_.resize(graph_.edges.size());
  for (std::size_t a = 0; a < graph_.edges.size(); ++a) {
    for (std::size_t b = 0; b < graph_.edges.size(); ++b) {
      if (signed_[a] == signed_[b]) ties_[a].push_back(static_cast<int>(b));
    }
  }
}

MSTCone mst_cone(const MstFanContext& ctx, const OrderedSpanningTree& t) {
  const auto& g = ctx.graph();
  check_spanning_tree(g, t);
  MSTCone out{t, instability_partition(g, t), ctx.secondary(), {}, {}};
  for (std::size_t k = 0; k + 1 < t.edges.size(); ++k) {
    out.in_tree_conditions.push_back(ctx.signed_form(t.edges[k + 1]) - ctx.signed_form(t.edges[k]));
  }
  const auto cut = cut_positions(g, t);
  for (std::size_t r = 0; r < g.edges.size(); ++r) {
    if (cut[r] < 0) continue;
    out.cut_edge_conditions.emplace_back(
        static_cast<int>(r),
        ctx.signed_form(static_cast<int>(r)) - ctx.signed_form(t.edges[static_cast<std::size_t>(cut[r])]));
  }
  for (const auto& f : out.in_tree_conditions) out.cone.add(f);
  for (const auto& [r, f] : out.cut_edge_conditions) out.cone.add(f);
  return out;
}

MSTCone mst_cone(const PointConfiguration& config, const HeightFunction& h, const Triangulation& tri,
                 const DualGraph& g, const OrderedSpanningTree& t) {
  if (!(tri.config == config)) throw ValidationError("triangulation belongs to a different configuration");
  MstFanContext ctx(tri, h);
  if (ctx.graph().edges != g.edges) throw ValidationError("dual graph does not belong to the triangulation");
  return mst_cone(ctx, t);
}

bool is_realizable(const MstFanContext& ctx, const OrderedSpanningTree& t) {
  return is_full_dimensional(mst_cone(ctx, t).cone).full;
}

bool is_realizable(const PointConfiguration& config, const HeightFunction& h, const Triangulation& tri,
                   const DualGraph& g, const OrderedSpanningTree& t) {
  return is_full_dimensional(mst_cone(config, h, tri, g, t).cone).full;
}

namespace {

// Depth-first extension of order prefixes. The prefix cone holds sc(h), the
// chain conditions, the cut-edge conditions of already closed edges and
// "every undecided edge is at least as long as the last chosen one"; each
// completion's cone lies inside it.
class PrefixSearch {
 public:
  explicit PrefixSearch(const MstFanContext& ctx) : ctx_(ctx), g_(ctx.graph()) {}

  std::vector<OrderedSpanningTree> run(const std::vector<int>& first_edges) {
    for (int e : first_edges) {
      State s{std::vector<int>(g_.edges.size(), kUndecided), {}, UnionFind(g_.nodes.size()), ctx_.secondary()};
      extend(s, e);
    }
    return std::move(found_);
  }

 private:
  static constexpr int kUndecided = -1;
  static constexpr int kTree = -2;

  struct State {
    std::vector<int> status;  // kUndecided, kTree or the cut position of a closed edge
    std::vector<int> order;
    UnionFind components;
    HCone cone;  // permanent part of the prefix cone
  };

  bool tie_allowed(const State& s, int e) const {
    for (int t : ctx_.tie_class(e)) {
      if (t == e || s.status[static_cast<std::size_t>(t)] != kTree) continue;
      // a tied tree edge must sit in the block that ends the current prefix
      bool in_last_block = false;
      for (auto k = s.order.size(); k-- > 0;) {
        const int o = s.order[k];
        if (ctx_.signed_form(o) != ctx_.signed_form(e)) break;
        if (o == t) in_last_block = true;
      }
      if (!in_last_block) return false;
    }
    return true;
  }

  void extend(State s, int e) {
    if (!tie_allowed(s, e)) return;
    const auto& le = ctx_.signed_form(e);
    if (!s.order.empty()) s.cone.add(le - ctx_.signed_form(s.order.back()));
    const int pos = static_cast<int>(s.order.size());
    s.order.push_back(e);
    s.status[static_cast<std::size_t>(e)] = kTree;
    const auto [a, b] = g_.endpoints[static_cast<std::size_t>(e)];
    s.components.unite(a, b);
    HCone test = s.cone;
    std::vector<int> open;
    for (std::size_t r = 0; r < g_.edges.size(); ++r) {
      if (s.status[r] != kUndecided) continue;
      const auto& f = ctx_.signed_form(static_cast<int>(r)) - le;
      const auto [x, y] = g_.endpoints[r];
      if (s.components.find(x) == s.components.find(y)) {
        s.status[r] = pos;
        s.cone.add(f);
        test.add(f);
      } else {
        open.push_back(static_cast<int>(r));
        test.add(f);
      }
    }
    if (!is_full_dimensional(test).full) return;
    if (s.order.size() + 1 == g_.nodes.size()) {
      found_.push_back(OrderedSpanningTree{s.order});
      return;
    }
    for (int r : open) extend(s, r);
  }

  const MstFanContext& ctx_;
  const DualGraph& g_;
  std::vector<OrderedSpanningTree> found_;
};

}  // namespace

RealizableEnumeration enumerate_realizable(const MstFanContext& ctx, const RealizableOptions& options) {
  const auto& g = ctx.graph();
  if (!options.override_guard && g.nodes.size() > options.max_nodes) {
    throw ScaleGuardError("ordered-tree enumeration refused: dual graph has " + std::to_string(g.nodes.size()) +
                          " nodes, limit is " + std::to_string(options.max_nodes));
  }
  const CycleMatroid matroid = CycleMatroid::of(g);
  RealizableEnumeration out;
  out.spanning_trees = matroid.spanning_tree_count();
  out.ordered_trees = out.spanning_trees * factorial(g.nodes.size() - 1);

  std::vector<OrderedSpanningTree> trees;
  if (g.nodes.size() == 1) {
    trees.push_back({});
  } else if (options.exhaustive) {
    for (EdgeSet basis : matroid.bases()) {
      OrderedSpanningTree t;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (basis >> e & 1) t.edges.push_back(static_cast<int>(e));
      }
      do {
        if (is_realizable(ctx, t)) trees.push_back(t);
      } while (std::next_permutation(t.edges.begin(), t.edges.end()));
    }
  } else {
    const unsigned jobs = std::max(1u, options.jobs);
    std::vector<std::vector<int>> work(jobs);
    for (std::size_t e = 0; e < g.edges.size(); ++e) work[e % jobs].push_back(static_cast<int>(e));
    std::vector<std::vector<OrderedSpanningTree>> results(jobs);
    if (jobs == 1) {
      results[0] = PrefixSearch(ctx).run(work[0]);
    } else {
      std::vector<std::thread> threads;
      for (unsigned j = 0; j < jobs; ++j) {
        threads.emplace_back([&, j] { results[j] = PrefixSearch(ctx).run(work[j]); });
      }
      for (auto& t : threads) t.join();
    }
    for (auto& r : results) trees.insert(trees.end(), r.begin(), r.end());
  }
  std::sort(trees.begin(), trees.end());
  for (const auto& t : trees) out.realizable.push_back(mst_cone(ctx, t));
  return out;
}

bool intersection_is_face(const HCone& a, const HCone& b) {
  const auto x = intersect(a, b);
  const auto report = dimension(x);
  std::set<LinearForm> vanishing;
  for (auto i : report.implicit_equalities) vanishing.insert(x.constraints()[i]);
  HCone face = a;
  for (const auto& f : a.constraints()) {
    if (vanishing.count(f)) face.add(-f);
  }
  return cone_contains(b, face);
}

MstFan mst_fan(const MstFanContext& ctx, std::uint64_t seed, std::size_t samples, const RealizableOptions& options) {
  MstFan fan;
  fan.cones = enumerate_realizable(ctx, options).realizable;
  auto& report = fan.report;
  report.cones = fan.cones.size();
  std::string first_failure;
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    if (!is_full_dimensional(fan.cones[i].cone).full) {
      ++report.purity_violations;
      if (first_failure.empty()) first_failure = "purity: cone " + std::to_string(i) + " is not full-dimensional";
    }
  }
  RationalSampler rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto g = sample_interior_point(ctx.secondary(), rng);
    std::size_t hits = 0;
    for (const auto& k : fan.cones) hits += k.cone.contains(g) ? 1 : 0;
    ++report.support_samples;
    report.max_multiplicity = std::max(report.max_multiplicity, hits);
    if (hits == 0) {
      ++report.support_violations;
      if (first_failure.empty()) first_failure = "support: a sampled height lies in no cone";
    }
  }
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    for (std::size_t j = i + 1; j < fan.cones.size(); ++j) {
      ++report.face_pairs;
      const auto& a = fan.cones[i].cone;
      const auto& b = fan.cones[j].cone;
      if (!intersection_is_face(a, b) || !intersection_is_face(b, a)) {
        ++report.face_violations;
        if (first_failure.empty()) {
          first_failure = "faces: cones " + std::to_string(i) + " and " + std::to_string(j) + " meet improperly";
        }
      }
    }
  }
  if (!report.ok()) throw FanViolationError(first_failure);
  return fan;
}

int inversion_count(const std::vector<int>& sigma) {
  int count = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t j = i + 1; j < sigma.size(); ++j) count += sigma[i] > sigma[j] ? 1 : 0;
  }
  return count;
}

std::optional<PermutationAnalysis> order_permutation_analysis(const MSTCone& k1, const MSTCone& k2) {
  auto sorted_edges = [](const MSTCone& k) {
    auto e = k.tree.edges;
    std::sort(e.begin(), e.end());
    return e;
  };
  if (sorted_edges(k1) != sorted_edges(k2)) return std::nullopt;
  auto blocks = [](const MSTCone& k) {
    std::vector<std::vector<int>> out;
    for (const auto& [a, b] : k.partition.ranges) {
      std::vector<int> block(k.tree.edges.begin() + a, k.tree.edges.begin() + b + 1);
      std::sort(block.begin(), block.end());
      out.push_back(std::move(block));
    }
    return out;
  };
  const auto b1 = blocks(k1);
  const auto b2 = blocks(k2);
  PermutationAnalysis out;
  for (const auto& block : b1) {
    auto it = std::find(b2.begin(), b2.end(), block);
    if (it == b2.end()) return std::nullopt;
    out.sigma.push_back(static_cast<int>(it - b2.begin()));
  }
  if (b1.size() != b2.size()) return std::nullopt;
  out.inversions = inversion_count(out.sigma);
  const auto x = intersect(k1.cone, k2.cone);
  out.codimension = static_cast<int>(x.ambient_dimension()) - dimension(x).dimension;
  return out;
}

}  // namespace mstfan
