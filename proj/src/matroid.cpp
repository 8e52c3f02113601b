#include "mstfan/matroid.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "mstfan/core.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/matrix.hpp"

namespace mstfan {

namespace {

std::vector<int> components_of(int nodes, const std::vector<std::pair<int, int>>& edges, EdgeSet s) {
  std::vector<int> parent(static_cast<std::size_t>(nodes));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    auto& p = parent[static_cast<std::size_t>(x)];
    return p == x ? x : (p = find(p));
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (s >> e & 1) parent[static_cast<std::size_t>(find(edges[e].first))] = find(edges[e].second);
  }
  for (int v = 0; v < nodes; ++v) parent[static_cast<std::size_t>(v)] = find(v);
  return parent;
}

}  // namespace

CycleMatroid::CycleMatroid(int nodes, std::vector<std::pair<int, int>> edges) : nodes_(nodes), edges_(std::move(edges)) {
  if (nodes_ < 1) throw ValidationError("graph needs at least one node");
  if (edges_.size() > 64) throw ScaleGuardError("cycle matroids are limited to 64 edges");
  for (const auto& [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= nodes_ || b >= nodes_) throw ValidationError("edge endpoint out of range");
  }
}

CycleMatroid CycleMatroid::of(const DualGraph& g) { return CycleMatroid(static_cast<int>(g.nodes.size()), g.endpoints); }

EdgeSet CycleMatroid::ground_set() const {
  return edges_.size() == 64 ? ~EdgeSet{0} : (EdgeSet{1} << edges_.size()) - 1;
}

int CycleMatroid::rank(EdgeSet s) const {
  const auto comp = components_of(nodes_, edges_, s);
  int roots = 0;
  for (int v = 0; v < nodes_; ++v) roots += comp[static_cast<std::size_t>(v)] == v ? 1 : 0;
  return nodes_ - roots;
}

bool CycleMatroid::is_independent(EdgeSet s) const { return rank(s) == std::popcount(s); }

std::vector<EdgeSet> CycleMatroid::bases() const {
  const int r = rank();
  std::vector<EdgeSet> out;
  std::function<void(std::size_t, EdgeSet, int)> grow = [&](std::size_t e, EdgeSet s, int size) {
    if (size == r) {
      out.push_back(s);
      return;
    }
    if (e == edges_.size() || size + static_cast<int>(edges_.size() - e) < r) return;
    const EdgeSet with = s | EdgeSet{1} << e;
    if (is_independent(with)) grow(e + 1, with, size + 1);
    grow(e + 1, s, size);
  };
  grow(0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Integer CycleMatroid::spanning_tree_count() const {
  if (nodes_ == 1) return 1;
  const auto n = static_cast<std::size_t>(nodes_ - 1);
  Matrix lap(n, n);
  for (const auto& [a, b] : edges_) {
    if (a == b) continue;
    for (int v : {a, b}) {
      if (v > 0) lap(static_cast<std::size_t>(v - 1), static_cast<std::size_t>(v - 1)) += 1;
    }
    if (a > 0 && b > 0) {
      lap(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)) -= 1;
      lap(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(a - 1)) -= 1;
    }
  }
  const Rational det = determinant(std::move(lap));
  return det.get_num();
}

EdgeSet initial_matroid_loops(const CycleMatroid& m, const RationalVector& w) {
  if (w.size() != m.size()) throw ValidationError("one weight per edge expected");
  std::optional<Rational> best;
  EdgeSet used = 0;
  for (EdgeSet b : m.bases()) {
    Rational total = 0;
    for (std::size_t e = 0; e < m.size(); ++e) {
      if (b >> e & 1) total += w[e];
    }
    if (!best || total < *best) {
      best = total;
      used = b;
    } else if (total == *best) {
      used |= b;
    }
  }
  return m.ground_set() & ~used;
}

EdgeSet initial_matroid_loops_fast(const CycleMatroid& m, const RationalVector& w) {
  if (w.size() != m.size()) throw ValidationError("one weight per edge expected");
  EdgeSet loops = 0;
  for (std::size_t e = 0; e < m.size(); ++e) {
    EdgeSet lighter = 0;
    for (std::size_t f = 0; f < m.size(); ++f) {
      if (w[f] < w[e]) lighter |= EdgeSet{1} << f;
    }
    if (m.rank(lighter | EdgeSet{1} << e) == m.rank(lighter)) loops |= EdgeSet{1} << e;
  }
  return loops;
}

bool bergman_membership(const CycleMatroid& m, const RationalVector& w) { return initial_matroid_loops_fast(m, w) == 0; }

Flag flag_of(const RationalVector& w) {
  if (w.size() > 64) throw ScaleGuardError("flags are limited to 64 elements");
  std::vector<Rational> levels(w.begin(), w.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  Flag flag{{0}};
  for (const auto& c : levels) {
    EdgeSet s = 0;
    for (std::size_t e = 0; e < w.size(); ++e) {
      if (w[e] <= c) s |= EdgeSet{1} << e;
    }
    flag.chain.push_back(s);
  }
  return flag;
}

bool is_flat(const CycleMatroid& m, EdgeSet s) {
  const int r = m.rank(s);
  for (std::size_t e = 0; e < m.size(); ++e) {
    if (!(s >> e & 1) && m.rank(s | EdgeSet{1} << e) == r) return false;
  }
  return true;
}

bool is_flag_of_flats(const CycleMatroid& m, const Flag& flag) {
  return std::all_of(flag.chain.begin(), flag.chain.end(), [&](EdgeSet s) { return is_flat(m, s); });
}

Ridge ridge_for_circuit(const PointConfiguration& config, std::vector<PointIndex> z) {
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  const auto n1 = static_cast<std::size_t>(config.dim()) + 1;
  if (z.size() < 2 || z.size() > n1 + 1) throw InvalidCircuitError("a circuit has between 2 and n+2 points");
  for (auto v : z) {
    if (v < 0 || static_cast<std::size_t>(v) >= config.size()) throw InvalidCircuitError("circuit point out of range");
  }
  if (affinely_independent(config, z)) throw InvalidCircuitError("points are affinely independent");
  for (std::size_t i = 0; i < z.size(); ++i) {
    std::vector<PointIndex> rest = z;
    rest.erase(rest.begin() + static_cast<long>(i));
    if (!affinely_independent(config, rest)) throw InvalidCircuitError("dependent set is not minimal");
  }
  // t: z minus its first point, extended to a basis; s: swap the last circuit
  // point of t for the first one.
  std::vector<PointIndex> t(z.begin() + 1, z.end());
  for (PointIndex v = 0; v < static_cast<PointIndex>(config.size()) && t.size() < n1; ++v) {
    if (std::find(z.begin(), z.end(), v) != z.end()) continue;
    t.push_back(v);
    if (!affinely_independent(config, t)) t.pop_back();
  }
  if (t.size() != n1) throw InternalError("could not extend the circuit to a basis");
  std::vector<PointIndex> s = t;
  std::replace(s.begin(), s.end(), z.back(), z.front());
  auto r = Ridge::make(config, make_simplex(config, s), make_simplex(config, t));
  if (fundamental_circuit(config, r).support() != z) throw InternalError("constructed ridge has a different circuit");
  return r;
}

std::vector<SaturatingCell> saturating_cells(const std::vector<MSTCone>& cones, const DualGraph& g,
                                             bool override_guard) {
  if (!override_guard && cones.size() > 24) {
    throw ScaleGuardError("saturating-cell search refused: " + std::to_string(cones.size()) + " cones, limit is 24");
  }
  const CycleMatroid matroid = CycleMatroid::of(g);
  const EdgeSet all = matroid.ground_set();
  std::vector<EdgeSet> covers;
  for (const auto& k : cones) {
    EdgeSet s = 0;
    for (int e : k.tree.edges) s |= EdgeSet{1} << e;
    covers.push_back(s);
  }
  std::vector<SaturatingCell> out;
  std::vector<std::uint64_t> found;  // collections as masks over cone indices
  const std::size_t max_size = std::min(cones.size(), std::max<std::size_t>(1, g.edges.size()));
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::uint64_t members = 0;
      EdgeSet covered = 0;
      for (auto i : pick) {
        members |= std::uint64_t{1} << i;
        covered |= covers[i];
      }
      const bool superset = std::any_of(found.begin(), found.end(), [&](std::uint64_t f) { return (f & ~members) == 0; });
      if (!superset && covered == all) {
        HCone cell = cones[pick[0]].cone;
        for (std::size_t i = 1; i < k; ++i) cell = intersect(cell, cones[pick[i]].cone);
        const auto report = dimension(cell);
        if (report.dimension > lineality_dimension(cell)) {
          SaturatingCell c{pick, cell, report.relative_interior_point, false};
          RationalVector w;
          for (const auto& f : g.forms) w.push_back(abs(f.evaluate(c.witness)));
          c.bergman = bergman_membership(matroid, w);
          out.push_back(std::move(c));
          found.push_back(members);
        }
      }
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == cones.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace mstfan
