#pragma once

// Reference computations that share no code with the library: cofactor
// determinants, subset enumeration and exhaustive search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mstfan/config.hpp"

namespace oracle {

using mstfan::PointConfiguration;
using mstfan::PointIndex;
using mstfan::Rational;
using mstfan::RationalVector;
using Rows = std::vector<std::vector<Rational>>;

// Laplace expansion along the first row.
inline Rational det(const Rows& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rational total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Rows minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    const Rational term = m[0][c] * det(minor);
    total += (c % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

inline std::vector<Rational> homogeneous(const PointConfiguration& c, PointIndex i) {
  std::vector<Rational> row{1};
  for (auto x : c.point(i)) row.emplace_back(static_cast<long>(x));
  return row;
}

// det of the rows (1, v, h(v)) in the given order.
inline Rational lifted_det(const PointConfiguration& c, const std::vector<PointIndex>& pts, const RationalVector& h) {
  Rows m;
  for (auto i : pts) {
    auto row = homogeneous(c, i);
    row.push_back(h[static_cast<std::size_t>(i)]);
    m.push_back(row);
  }
  return det(m);
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == k) {
      fn(pick);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

// Affinely independent iff some maximal minor of the (1, v) rows is nonzero.
inline bool independent(const PointConfiguration& c, const std::vector<PointIndex>& pts) {
  const std::size_t cols = static_cast<std::size_t>(c.dim()) + 1;
  if (pts.size() > cols) return false;
  bool found = false;
  subsets(cols, pts.size(), [&](const std::vector<std::size_t>& pick) {
    if (found) return;
    Rows m;
    for (auto i : pts) {
      const auto row = homogeneous(c, i);
      std::vector<Rational> sub;
      for (auto k : pick) sub.push_back(row[k]);
      m.push_back(sub);
    }
    found = det(m) != 0;
  });
  return found;
}

// Minimal dependent subsets of `pool`.
inline std::vector<std::vector<PointIndex>> circuits(const PointConfiguration& c, const std::vector<PointIndex>& pool) {
  std::vector<std::vector<PointIndex>> out;
  for (std::size_t k = 2; k <= pool.size(); ++k) {
    subsets(pool.size(), k, [&](const std::vector<std::size_t>& pick) {
      std::vector<PointIndex> s;
      for (auto i : pick) s.push_back(pool[i]);
      if (independent(c, s)) return;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        auto t = s;
        t.erase(t.begin() + static_cast<long>(drop));
        if (!independent(c, t)) return;
      }
      out.push_back(s);
    });
  }
  return out;
}

// Affine interpolation of h|s at the homogeneous point q = (1, x).
inline Rational interpolate(const PointConfiguration& c, const std::vector<PointIndex>& s, const RationalVector& h,
                            const std::vector<Rational>& q) {
  // barycentric coordinates by Cramer's rule
  const std::size_t n = s.size();
  Rows base;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Rational> row;
    for (auto i : s) row.push_back(homogeneous(c, i)[r]);
    base.push_back(row);
  }
  const Rational d = det(base);
  Rational value = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Rows m = base;
    for (std::size_t r = 0; r < n; ++r) m[r][k] = q[r];
    value += det(m) / d * h[static_cast<std::size_t>(s[k])];
  }
  return value;
}

struct Graph {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
};

inline bool is_spanning_tree(const Graph& g, const std::vector<int>& edges) {
  if (static_cast<int>(edges.size()) != g.nodes - 1) return false;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.nodes));
  for (int e : edges) {
    adj[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].first)].push_back(g.edges[static_cast<std::size_t>(e)].second);
    adj[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].second)].push_back(g.edges[static_cast<std::size_t>(e)].first);
  }
  std::vector<bool> seen(static_cast<std::size_t>(g.nodes), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.nodes;
}

inline std::vector<std::vector<int>> spanning_trees(const Graph& g) {
  std::vector<std::vector<int>> out;
  if (g.nodes == 1) return {{}};
  subsets(g.edges.size(), static_cast<std::size_t>(g.nodes - 1), [&](const std::vector<std::size_t>& pick) {
    std::vector<int> t(pick.begin(), pick.end());
    if (is_spanning_tree(g, t)) out.push_back(t);
  });
  return out;
}

// Every minimum spanning tree by exhaustive search.
inline std::vector<std::vector<int>> minimum_spanning_trees(const Graph& g, const RationalVector& w) {
  std::vector<std::vector<int>> best;
  std::optional<Rational> best_weight;
  for (const auto& t : spanning_trees(g)) {
    Rational total = 0;
    for (int e : t) total += w[static_cast<std::size_t>(e)];
    if (!best_weight || total < *best_weight) {
      best_weight = total;
      best = {t};
    } else if (total == *best_weight) {
      best.push_back(t);
    }
  }
  return best;
}

// Rank by largest independent (forest) subset, exhaustively.
inline int brute_rank(const Graph& g, std::uint64_t s) {
  std::vector<int> members;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (s >> e & 1) members.push_back(static_cast<int>(e));
  }
  int best = 0;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << members.size()); ++sub) {
    // forest iff #edges = #nodes - #components, checked by naive relabelling
    std::vector<int> comp(static_cast<std::size_t>(g.nodes));
    for (int v = 0; v < g.nodes; ++v) comp[static_cast<std::size_t>(v)] = v;
    bool forest = true;
    int size = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!(sub >> i & 1)) continue;
      ++size;
      const auto [a, b] = g.edges[static_cast<std::size_t>(members[i])];
      const int ca = comp[static_cast<std::size_t>(a)];
      const int cb = comp[static_cast<std::size_t>(b)];
      if (ca == cb) {
        forest = false;
        break;
      }
      for (auto& x : comp) {
        if (x == cb) x = ca;
      }
    }
    if (forest) best = std::max(best, size);
  }
  return best;
}

}  // namespace oracle
