// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond the graph container, and favour obviousness
// over speed.
#ifndef TCS_TESTS_ORACLES_HPP
#define TCS_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "tcs/graph.hpp"

namespace oracle {

using tcs::Count;
using tcs::Delta;
using tcs::Timestamp;
using tcs::VertexId;

using Pair = std::pair<VertexId, VertexId>;
using Lists = std::map<Pair, std::vector<Timestamp>>;

inline Pair pair_of(VertexId a, VertexId b) { return a < b ? Pair{a, b} : Pair{b, a}; }

inline std::uint64_t gap(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

/// Triples (x, y, z) with all pairwise gaps <= delta.
inline Count count_triples(const std::vector<Timestamp>& a, const std::vector<Timestamp>& b,
                           const std::vector<Timestamp>& c, Delta delta) {
  Count n = 0;
  for (auto x : a)
    for (auto y : b)
      for (auto z : c)
        if (gap(x, y) <= delta && gap(x, z) <= delta && gap(y, z) <= delta) ++n;
  return n;
}

inline Lists lists_of(const tcs::TemporalGraph& g) {
  Lists l;
  for (const auto& e : g.edges()) l[pair_of(e.u, e.v)] = e.timestamps;
  return l;
}

/// Every static triangle a < b < c present in `l`.
inline std::vector<std::array<VertexId, 3>> triangles(const Lists& l) {
  std::set<VertexId> vs;
  for (const auto& [p, _] : l) vs.insert(p.first), vs.insert(p.second);
  std::vector<VertexId> v(vs.begin(), vs.end());
  std::vector<std::array<VertexId, 3>> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!l.count({v[i], v[j]})) continue;
      for (std::size_t k = j + 1; k < v.size(); ++k)
        if (l.count({v[i], v[k]}) && l.count({v[j], v[k]})) out.push_back({v[i], v[j], v[k]});
    }
  return out;
}

inline Count triangle_count(const Lists& l, const std::array<VertexId, 3>& t, Delta delta) {
  return count_triples(l.at({t[0], t[1]}), l.at({t[0], t[2]}), l.at({t[1], t[2]}), delta);
}

/// Support of every edge of `l`, counted inside `l` only.
inline std::map<Pair, Count> supports(const Lists& l, Delta delta) {
  std::map<Pair, Count> s;
  for (const auto& [p, _] : l) s[p] = 0;
  for (const auto& t : triangles(l)) {
    Count n = triangle_count(l, t, delta);
    s[{t[0], t[1]}] += n, s[{t[0], t[2]}] += n, s[{t[1], t[2]}] += n;
  }
  return s;
}

/// Trussness by exhaustion: for every edge, the largest minimum support over
/// all edge subsets containing it. Feasible for roughly 16 edges or fewer.
inline std::map<Pair, Count> trussness(const Lists& l, Delta delta) {
  std::vector<Pair> edges;
  for (const auto& [p, _] : l) edges.push_back(p);
  const std::size_t m = edges.size();
  std::map<Pair, Count> best;
  for (auto p : edges) best[p] = 0;
  for (std::uint64_t mask = 1; mask < (1ull << m); ++mask) {
    Lists sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) sub[edges[i]] = l.at(edges[i]);
    auto s = supports(sub, delta);
    Count lo = ~Count{0};
    for (const auto& [_, v] : s) lo = std::min(lo, v);
    for (const auto& [p, _] : s) best[p] = std::max(best[p], lo);
  }
  return best;
}

/// Components of the triangles in `tris`, seeded from edges in `seeds`,
/// merging triangles that share an edge (or, with by_vertex, a vertex).
inline std::vector<std::set<Pair>> components(const std::vector<std::array<VertexId, 3>>& tris,
                                              const std::vector<Pair>& seeds, bool by_vertex) {
  const std::size_t n = tris.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto edges_of = [](const std::array<VertexId, 3>& t) {
    return std::set<Pair>{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool linked = false;
      auto a = edges_of(tris[i]), b = edges_of(tris[j]);
      for (const auto& e : a) linked |= b.count(e) > 0;
      if (by_vertex)
        for (auto x : tris[i])
          for (auto y : tris[j]) linked |= x == y;
      if (linked) parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::set<Pair>> groups;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : edges_of(tris[i])) groups[find(i)].insert(e);
  std::vector<std::set<Pair>> out;
  std::set<std::size_t> used;
  for (const auto& s : seeds)
    for (const auto& [root, es] : groups)
      if (es.count(s) && used.insert(root).second) out.push_back(es);
  std::sort(out.begin(), out.end());
  return out;
}

struct Community {
  Count k_star = 0;
  std::vector<std::set<Pair>> components;
};

/// q-MDT from exhaustive trussness: k* is the best trussness among q's edges,
/// then components of the qualifying triangles inside {tau >= k*} reached
/// from q's edges.
inline Community community(const Lists& l, VertexId q, Delta delta, bool by_vertex) {
  auto tau = trussness(l, delta);
  Community c;
  std::vector<Pair> seeds;
  for (const auto& [p, t] : tau)
    if (p.first == q || p.second == q) c.k_star = std::max(c.k_star, t);
  if (c.k_star == 0) return c;
  for (const auto& [p, t] : tau)
    if ((p.first == q || p.second == q) && t >= c.k_star) seeds.push_back(p);
  Lists strong;
  for (const auto& [p, t] : tau)
    if (t >= c.k_star) strong[p] = l.at(p);
  std::vector<std::array<VertexId, 3>> live;
  for (const auto& t : triangles(strong))
    if (triangle_count(strong, t, delta) > 0) live.push_back(t);
  c.components = components(live, seeds, by_vertex);
  return c;
}

/// Random temporal graph: `m` temporal edges over n vertices, timestamps in [1, t_max].
inline tcs::TemporalGraph random_graph(std::mt19937_64& rng, std::uint32_t n, std::size_t m, Timestamp t_max) {
  std::uniform_int_distribution<std::uint32_t> vd(0, n - 1);
  std::uniform_int_distribution<Timestamp> td(1, t_max);
  std::vector<tcs::TemporalEdge> list;
  for (std::size_t i = 0; i < m; ++i) list.push_back({vd(rng), vd(rng), td(rng)});
  return tcs::TemporalGraph::from_edges(n, std::move(list));
}

/// Random graph over a fixed small pool of static edges, so that triangles
/// are common and edge counts stay small enough for exhaustive oracles.
inline tcs::TemporalGraph random_dense_graph(std::mt19937_64& rng, std::uint32_t n, std::size_t static_edges,
                                             std::size_t max_ts, Timestamp t_max) {
  std::vector<Pair> all;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) all.push_back({a, b});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(all.size(), static_edges));
  std::uniform_int_distribution<Timestamp> td(1, t_max);
  std::uniform_int_distribution<std::size_t> kd(1, max_ts);
  std::vector<tcs::TemporalEdge> list;
  for (auto [a, b] : all)
    for (std::size_t k = kd(rng); k > 0; --k) list.push_back({a, b, td(rng)});
  return tcs::TemporalGraph::from_edges(n, std::move(list));
}

}  // namespace oracle

#endif  // TCS_TESTS_ORACLES_HPP
