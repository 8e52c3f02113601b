#include "mstfan/triangulate.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "mstfan/cone.hpp"
#include "mstfan/core.hpp"
#include "mstfan/errors.hpp"
#include "mstfan/lp.hpp"
#include "mstfan/random.hpp"

namespace mstfan {

namespace {

void for_each_subset(const std::vector<PointIndex>& pool, std::size_t k,
                     const std::function<void(const std::vector<PointIndex>&)>& fn) {
  if (k > pool.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<PointIndex> pick(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) pick[i] = pool[idx[i]];
    fn(pick);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<PointIndex> all_indices(const PointConfiguration& config) {
  std::vector<PointIndex> v(config.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<PointIndex>(i);
  return v;
}

std::vector<SignedCircuit> circuits_within(const PointConfiguration& config, const std::vector<PointIndex>& pool) {
  std::vector<SignedCircuit> out;
  const auto n1 = static_cast<std::size_t>(config.dim()) + 1;
  for (std::size_t k = 2; k <= n1 + 1; ++k) {
    for_each_subset(pool, k, [&](const std::vector<PointIndex>& sub) {
      Matrix m(n1, k);
      for (std::size_t c = 0; c < k; ++c) {
        m(0, c) = 1;
        const auto& p = config.point(sub[c]);
        for (std::size_t r = 1; r < n1; ++r) m(r, c) = static_cast<long>(p[r - 1]);
      }
      const auto ker = kernel(std::move(m));
      if (ker.size() != 1) return;
      const auto& lambda = ker.front();
      if (std::any_of(lambda.begin(), lambda.end(), [](const Rational& q) { return sgn(q) == 0; })) return;
      const int normalize = sgn(lambda.front());
      SignedCircuit z;
      for (std::size_t c = 0; c < k; ++c) (sgn(lambda[c]) * normalize > 0 ? z.positive : z.negative).push_back(sub[c]);
      out.push_back(std::move(z));
    });
  }
  return out;
}

std::uint64_t mask_of(const std::vector<PointIndex>& v) {
  std::uint64_t m = 0;
  for (auto i : v) m |= std::uint64_t{1} << i;
  return m;
}

struct CircuitMask {
  std::uint64_t positive;
  std::uint64_t negative;
};

std::vector<CircuitMask> circuit_masks(const std::vector<SignedCircuit>& circuits) {
  std::vector<CircuitMask> out;
  out.reserve(circuits.size());
  for (const auto& z : circuits) out.push_back({mask_of(z.positive), mask_of(z.negative)});
  return out;
}

bool proper_by_masks(const std::vector<CircuitMask>& circuits, std::uint64_t s, std::uint64_t t) {
  for (const auto& z : circuits) {
    if ((z.positive & ~s) == 0 && (z.negative & ~t) == 0) return false;
    if ((z.negative & ~s) == 0 && (z.positive & ~t) == 0) return false;
  }
  return true;
}

std::string folding_witness(const PointConfiguration& config, const Simplex& s, PointIndex j) {
  return "(" + to_string(config, s) + ", " + config.label(j) + ")";
}

// Cells of Sigma(h) without any validation; nullopt when a folding form vanishes.
std::optional<std::vector<Simplex>> upper_cells(const CandidateSet& candidates, const HeightFunction& h,
                                                std::string* witness) {
  std::vector<Simplex> cells;
  for (std::size_t i = 0; i < candidates.simplices().size(); ++i) {
    bool inside = true;
    for (const auto& [j, form] : candidates.folding(i)) {
      const int s = sgn(form.evaluate(h));
      if (s == 0) {
        if (witness) *witness = folding_witness(candidates.config(), candidates.simplices()[i], j);
        return std::nullopt;
      }
      if (s < 0) inside = false;
    }
    if (inside) cells.push_back(candidates.simplices()[i]);
  }
  return cells;
}

Rational volume_sum(const PointConfiguration& config, const std::vector<Simplex>& cells) {
  Rational v = 0;
  for (const auto& s : cells) v += normalized_volume(config, s.vertices);
  return v;
}

// Sign of the point p relative to the hyperplane through the n points of `facet`.
int side(const PointConfiguration& config, const std::vector<PointIndex>& facet, const RationalVector& p) {
  const auto n1 = facet.size() + 1;
  Matrix m(n1, n1);
  for (std::size_t r = 0; r < facet.size(); ++r) {
    m(r, 0) = 1;
    for (std::size_t c = 1; c < n1; ++c) m(r, c) = static_cast<long>(config.point(facet[r])[c - 1]);
  }
  m(n1 - 1, 0) = 1;
  for (std::size_t c = 1; c < n1; ++c) m(n1 - 1, c) = p[c - 1];
  return sgn(determinant(std::move(m)));
}

RationalVector as_rational(const IntPoint& p) {
  RationalVector v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = static_cast<long>(p[i]);
  return v;
}

bool in_convex_hull_of_others(const PointConfiguration& config, PointIndex j) {
  // lambda >= 0, sum lambda = 1, sum lambda v = v_j over the other points.
  const std::size_t m = config.size() - 1;
  const auto n = static_cast<std::size_t>(config.dim());
  Matrix rows(m + 2 * (n + 1), m);
  RationalVector rhs(rows.rows());
  for (std::size_t i = 0; i < m; ++i) rows(i, i) = 1;
  std::size_t col = 0;
  for (PointIndex i = 0; i < static_cast<PointIndex>(config.size()); ++i) {
    if (i == j) continue;
    rows(m, col) = 1;
    rows(m + 1, col) = -1;
    for (std::size_t k = 0; k < n; ++k) {
      rows(m + 2 + 2 * k, col) = static_cast<long>(config.point(i)[k]);
      rows(m + 3 + 2 * k, col) = -static_cast<long>(config.point(i)[k]);
    }
    ++col;
  }
  rhs[m] = 1;
  rhs[m + 1] = -1;
  for (std::size_t k = 0; k < n; ++k) {
    rhs[m + 2 + 2 * k] = static_cast<long>(config.point(j)[k]);
    rhs[m + 3 + 2 * k] = -static_cast<long>(config.point(j)[k]);
  }
  return find_feasible(rows, rhs).has_value();
}

}  // namespace

int DualGraph::node_index(const Simplex& s) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
  return (it != nodes.end() && *it == s) ? static_cast<int>(it - nodes.begin()) : -1;
}

int DualGraph::edge_index(const Ridge& r) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), r);
  return (it != edges.end() && *it == r) ? static_cast<int>(it - edges.begin()) : -1;
}

CandidateSet::CandidateSet(PointConfiguration config) : config_(std::move(config)) {
  const auto pool = all_indices(config_);
  for_each_subset(pool, static_cast<std::size_t>(config_.dim()) + 1, [&](const std::vector<PointIndex>& sub) {
    if (sgn(orientation(config_, sub)) != 0) simplices_.push_back(Simplex{sub});
  });
  folding_.reserve(simplices_.size());
  for (const auto& s : simplices_) {
    std::vector<std::pair<PointIndex, LinearForm>> forms;
    for (auto j : pool) {
      if (!s.contains(j)) forms.emplace_back(j, folding_form(config_, s, j));
    }
    folding_.push_back(std::move(forms));
  }
}

Triangulation regular_triangulation(const PointConfiguration& config, const HeightFunction& h) {
  return regular_triangulation(CandidateSet(config), h);
}

Triangulation regular_triangulation(const CandidateSet& candidates, const HeightFunction& h) {
  const auto& config = candidates.config();
  if (h.size() != config.size()) throw ValidationError("height function does not match the configuration");
  std::string witness;
  auto cells = upper_cells(candidates, h, &witness);
  if (!cells) throw GenericityError("height function is not generic: a folding form vanishes", witness);
  std::uint64_t used = 0;
  for (const auto& s : *cells) used |= s.mask();
  for (PointIndex i = 0; i < static_cast<PointIndex>(config.size()); ++i) {
    if (!(used >> i & 1)) throw ValidationError("point " + config.label(i) + " is not a vertex of the triangulation; configuration is not in convex position");
  }
  Triangulation tri{config, std::move(*cells)};
  validate_triangulation(tri);
  return tri;
}

GenericityReport is_generic(const PointConfiguration& config, const HeightFunction& h) {
  return is_generic(CandidateSet(config), h);
}

GenericityReport is_generic(const CandidateSet& candidates, const HeightFunction& h) {
  const auto& config = candidates.config();
  GenericityReport report;
  std::string witness;
  auto cells = upper_cells(candidates, h, &witness);
  if (!cells) return {false, GenericityViolation::vanishing_folding_form, witness};
  const auto graph = dual_graph(Triangulation{config, std::move(*cells)}, h);
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    if (sgn(graph.lengths[i]) == 0) {
      return {false, GenericityViolation::zero_edge_length, to_string(config, graph.edges[i])};
    }
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    for (std::size_t k = i + 1; k < graph.edges.size(); ++k) {
      if (graph.lengths[i] == graph.lengths[k] && !same_up_to_sign(graph.forms[i], graph.forms[k])) {
        return {false, GenericityViolation::accidental_tie,
                to_string(config, graph.edges[i]) + " ~ " + to_string(config, graph.edges[k])};
      }
    }
  }
  return report;
}

DualGraph dual_graph(const Triangulation& tri, const HeightFunction& h) {
  DualGraph g;
  g.nodes = tri.cells;
  std::sort(g.nodes.begin(), g.nodes.end());
  const auto n = static_cast<int>(tri.config.dim());
  for (std::size_t a = 0; a < g.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < g.nodes.size(); ++b) {
      if (std::popcount(g.nodes[a].mask() & g.nodes[b].mask()) == n) {
        g.edges.push_back(Ridge::make(tri.config, g.nodes[a], g.nodes[b]));
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (const auto& r : g.edges) {
    g.endpoints.emplace_back(g.node_index(r.left()), g.node_index(r.right()));
    g.forms.push_back(edge_length_form(tri.config, r));
    g.lengths.push_back(abs(g.forms.back().evaluate(h)));
  }
  return g;
}

RationalVector dual_vertex_position(const Triangulation& tri, const HeightFunction& h, const Simplex& cell) {
  const auto& config = tri.config;
  if (std::find(tri.cells.begin(), tri.cells.end(), cell) == tri.cells.end()) {
    throw ValidationError("cell " + to_string(config, cell) + " is not part of the triangulation");
  }
  const auto n = static_cast<std::size_t>(config.dim());
  // <v_i - v_0, x> = h(v_0) - h(v_i)
  Matrix a(n, n);
  RationalVector b(n);
  const auto& v0 = config.point(cell.vertices[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& vi = config.point(cell.vertices[i + 1]);
    for (std::size_t k = 0; k < n; ++k) a(i, k) = static_cast<long>(vi[k] - v0[k]);
    b[i] = h[cell.vertices[0]] - h[cell.vertices[i + 1]];
  }
  auto x = solve(std::move(a), std::move(b));
  if (!x) throw InternalError("dual vertex system is singular");
  auto value = [&](PointIndex p) -> Rational { return h[p] + dot(as_rational(config.point(p)), *x); };
  const Rational top = value(cell.vertices[0]);
  for (PointIndex p = 0; p < static_cast<PointIndex>(config.size()); ++p) {
    if (value(p) > top) throw InternalError("dual vertex is not a vertex of the tropical hypersurface");
  }
  return *x;
}

std::vector<SignedCircuit> affine_circuits(const PointConfiguration& config) {
  return circuits_within(config, all_indices(config));
}

bool properly_intersect(const PointConfiguration& config, const Simplex& s, const Simplex& t) {
  std::vector<PointIndex> pool;
  std::set_union(s.vertices.begin(), s.vertices.end(), t.vertices.begin(), t.vertices.end(), std::back_inserter(pool));
  return proper_by_masks(circuit_masks(circuits_within(config, pool)), s.mask(), t.mask());
}

Rational total_volume(const PointConfiguration& config) {
  const CandidateSet candidates(config);
  RationalSampler rng(0x5eedu);
  for (int attempt = 0; attempt < 64; ++attempt) {
    HeightFunction h(rng.integer_vector(config.size(), 1000000));
    if (auto cells = upper_cells(candidates, h, nullptr)) return volume_sum(config, *cells);
  }
  throw InternalError("could not find a generic lifting for the volume computation");
}

void validate_triangulation(const Triangulation& tri) {
  const auto& config = tri.config;
  for (const auto& s : tri.cells) {
    if (s.vertices.size() != static_cast<std::size_t>(config.dim()) + 1 || !affinely_independent(config, s.vertices)) {
      throw InternalError("cell " + to_string(config, s) + " is not a maximal simplex");
    }
  }
  if (volume_sum(config, tri.cells) != total_volume(config)) {
    throw InternalError("cell volumes do not add up to the volume of the convex hull");
  }
  const auto circuits = circuit_masks(affine_circuits(config));
  for (std::size_t a = 0; a < tri.cells.size(); ++a) {
    for (std::size_t b = a + 1; b < tri.cells.size(); ++b) {
      if (!proper_by_masks(circuits, tri.cells[a].mask(), tri.cells[b].mask())) {
        throw InternalError("cells " + to_string(config, tri.cells[a]) + " and " + to_string(config, tri.cells[b]) +
                            " do not intersect properly");
      }
    }
  }
}

std::vector<EnumeratedTriangulation> enumerate_triangulations(const PointConfiguration& config,
                                                              const EnumerationLimits& limits) {
  if (!limits.override_guard && (config.size() > limits.max_points || config.dim() > limits.max_dim)) {
    throw ScaleGuardError("triangulation enumeration refused: " + std::to_string(config.size()) + " points in dimension " +
                          std::to_string(config.dim()) + " exceeds the limit of " + std::to_string(limits.max_points) +
                          " points in dimension " + std::to_string(limits.max_dim));
  }
  for (PointIndex j = 0; j < static_cast<PointIndex>(config.size()); ++j) {
    if (in_convex_hull_of_others(config, j)) {
      throw ValidationError("point " + config.label(j) + " is not a vertex; configuration is not in convex position");
    }
  }
  const CandidateSet candidates(config);
  const auto& simplices = candidates.simplices();
  const std::size_t count = simplices.size();
  const auto n = static_cast<std::size_t>(config.dim());
  const Rational total = total_volume(config);
  const auto circuits = circuit_masks(affine_circuits(config));

  std::vector<std::vector<bool>> compatible(count, std::vector<bool>(count, false));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      compatible[a][b] = compatible[b][a] = proper_by_masks(circuits, simplices[a].mask(), simplices[b].mask());
    }
  }

  // Facets of candidates: interior ones need a cell on each side.
  struct FacetInfo {
    std::vector<PointIndex> points;
    bool interior = false;
    std::vector<std::pair<std::size_t, int>> cells;  // (candidate, side of its apex)
  };
  std::map<std::uint64_t, std::size_t> facet_id;
  std::vector<FacetInfo> facets;
  std::vector<std::vector<std::pair<std::size_t, int>>> cell_facets(count);  // (facet, side)
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t skip = 0; skip <= n; ++skip) {
      std::vector<PointIndex> f;
      for (std::size_t i = 0; i <= n; ++i) {
        if (i != skip) f.push_back(simplices[c].vertices[i]);
      }
      const auto key = mask_of(f);
      auto [it, fresh] = facet_id.emplace(key, facets.size());
      if (fresh) {
        FacetInfo info;
        info.points = f;
        bool above = false;
        bool below = false;
        for (PointIndex p = 0; p < static_cast<PointIndex>(config.size()); ++p) {
          const int s = side(config, f, as_rational(config.point(p)));
          above = above || s > 0;
          below = below || s < 0;
        }
        info.interior = above && below;
        facets.push_back(std::move(info));
      }
      const int s = side(config, f, as_rational(config.point(simplices[c].vertices[skip])));
      facets[it->second].cells.emplace_back(c, s);
      cell_facets[c].emplace_back(it->second, s);
    }
  }

  // A generic point inside the first candidate, off every facet hyperplane.
  RationalSampler rng(0x7a1cu);
  RationalVector q;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 256) throw InternalError("could not place a generic interior point");
    RationalVector bary(n + 1);
    Rational sum = 0;
    for (auto& b : bary) {
      b = rng.integer(1, 1000);
      sum += b;
    }
    q.assign(n, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
      const auto& p = config.point(simplices[0].vertices[i]);
      for (std::size_t k = 0; k < n; ++k) q[k] += bary[i] / sum * static_cast<long>(p[k]);
    }
    if (std::all_of(facets.begin(), facets.end(), [&](const FacetInfo& f) { return side(config, f.points, q) != 0; })) {
      break;
    }
  }
  std::vector<std::size_t> start;
  for (std::size_t c = 0; c < count; ++c) {
    bool inside = true;
    for (const auto& [f, s] : cell_facets[c]) {
      if (side(config, facets[f].points, q) != s) inside = false;
    }
    if (inside) start.push_back(c);
  }

  std::set<std::vector<Simplex>> found;
  std::vector<std::size_t> chosen;
  std::vector<int> covered(facets.size(), 0);  // bit 0: side +1 covered, bit 1: side -1 covered
  auto bit = [](int s) { return s > 0 ? 1 : 2; };

  std::function<void()> extend = [&]() {
    std::size_t pending = facets.size();
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (facets[f].interior && (covered[f] == 1 || covered[f] == 2)) {
        pending = f;
        break;
      }
    }
    if (pending == facets.size()) {
      std::vector<Simplex> cells;
      for (auto c : chosen) cells.push_back(simplices[c]);
      if (volume_sum(config, cells) != total) throw InternalError("closed cell complex does not cover the hull");
      std::sort(cells.begin(), cells.end());
      found.insert(std::move(cells));
      return;
    }
    const int need = covered[pending] == 1 ? -1 : 1;
    for (const auto& [c, s] : facets[pending].cells) {
      if (s != need) continue;
      if (!std::all_of(chosen.begin(), chosen.end(), [&](std::size_t d) { return compatible[c][d]; })) continue;
      chosen.push_back(c);
      for (const auto& [f, fs] : cell_facets[c]) covered[f] |= bit(fs);
      extend();
      for (const auto& [f, fs] : cell_facets[c]) covered[f] &= ~bit(fs);
      chosen.pop_back();
    }
  };
  for (auto c : start) {
    chosen.push_back(c);
    for (const auto& [f, fs] : cell_facets[c]) covered[f] |= bit(fs);
    extend();
    for (const auto& [f, fs] : cell_facets[c]) covered[f] &= ~bit(fs);
    chosen.pop_back();
  }

  std::vector<EnumeratedTriangulation> out;
  for (const auto& cells : found) {
    EnumeratedTriangulation e{Triangulation{config, cells}, false, {}};
    const auto sc = secondary_cone(config, e.triangulation);
    e.regular = is_full_dimensional(sc).full;
    if (e.regular) {
      // LP witnesses sit on vertices of {f >= 1} and tend to be degenerate.
      for (int attempt = 0;; ++attempt) {
        if (attempt > 256) throw InternalError("could not sample a generic height in a secondary cone");
        auto x = sample_interior_point(sc, rng);
        if (is_generic(candidates, HeightFunction(x)).generic) {
          e.interior_witness = std::move(x);
          break;
        }
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace mstfan
