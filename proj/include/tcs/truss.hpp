#ifndef TCS_TRUSS_HPP
#define TCS_TRUSS_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/tricount.hpp"
#include "tcs/types.hpp"

namespace tcs {

/// A q-MDT answer: the achieved k* and the higher-order components that
/// contain the query vertex. Components are sorted edge-id lists, and the
/// list of components is itself sorted, so results compare by value.
struct CommunityResult {
  Count k_star = 0;
  std::vector<std::vector<EdgeId>> components;
  VertexId query = 0;
  Delta delta = 0;

  bool empty() const noexcept { return components.empty(); }

  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    for (const auto& c : components) out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<VertexId> vertices(const TemporalGraph& g) const {
    std::vector<VertexId> out;
    for (auto e : edges()) out.push_back(g.edge(e).u), out.push_back(g.edge(e).v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void normalize() {
    for (auto& c : components) std::sort(c.begin(), c.end());
    std::sort(components.begin(), components.end());
  }

  friend bool operator==(const CommunityResult& a, const CommunityResult& b) {
    return a.k_star == b.k_star && a.components == b.components;
  }
};

/// Triangle over a local edge numbering, weighted by its temporal count.
struct LocalTriangle {
  TriangleKey key;
  std::array<std::uint32_t, 3> edges{};
  Count weight = 0;
};

struct PeelResult {
  Count k_max = 0;
  std::vector<Count> trussness;  // meaningful where settled
  std::vector<char> settled;     // edge was peeled before the run stopped
};

/// Min-support peeling over `edge_count` local edges.
///
/// Supports are the weight sums of the triangles each edge belongs to. Ties
/// are broken by `tie_rank` (lowest first), or by edge number when empty.
/// With a non-empty `anchor` mask the run stops as soon as the last anchored
/// edge is removed; k_max is then the largest trussness among anchored edges
/// and edges still live have trussness >= k_max.
inline PeelResult peel(std::size_t edge_count, std::span<const LocalTriangle> triangles,
                       std::span<const char> anchor = {}, std::span<const std::uint32_t> tie_rank = {}) {
  PeelResult r;
  r.trussness.assign(edge_count, 0);
  r.settled.assign(edge_count, 0);
  if (edge_count == 0) return r;

  std::vector<Count> support(edge_count, 0);
  std::vector<std::uint32_t> offsets(edge_count + 1, 0);
  for (const auto& t : triangles)
    for (auto e : t.edges) ++offsets[e + 1], support[e] += t.weight;
  for (std::size_t i = 0; i < edge_count; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> incident(offsets.back());
  {
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t i = 0; i < triangles.size(); ++i)
      for (auto e : triangles[i].edges) incident[fill[e]++] = i;
  }

  auto rank = [&](std::uint32_t e) -> std::uint32_t { return tie_rank.empty() ? e : tie_rank[e]; };
  using Item = std::tuple<Count, std::uint32_t, std::uint32_t>;  // support, rank, edge
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::uint32_t e = 0; e < edge_count; ++e) heap.emplace(support[e], rank(e), e);

  std::size_t anchors_left = 0;
  for (char a : anchor) anchors_left += a != 0;
  const bool anchored = !anchor.empty();
  if (anchored && anchors_left == 0) return r;

  std::vector<char> dead(triangles.size(), 0);
  Count level = 0;
  while (!heap.empty()) {
    auto [s, rk, e] = heap.top();
    heap.pop();
    if (r.settled[e] || s != support[e]) continue;
    level = std::max(level, s);
    r.trussness[e] = level;
    r.settled[e] = 1;
    for (auto i = offsets[e]; i < offsets[e + 1]; ++i) {
      auto ti = incident[i];
      if (dead[ti]) continue;
      dead[ti] = 1;
      for (auto f : triangles[ti].edges) {
        if (f == e || r.settled[f]) continue;
        support[f] -= triangles[ti].weight;
        heap.emplace(support[f], rank(f), f);
      }
    }
    if (anchored) {
      if (anchor[e]) {
        r.k_max = level;
        if (--anchors_left == 0) break;
      }
    } else {
      r.k_max = level;
    }
  }
  return r;
}

struct Decomposition {
  Count k_max = 0;
  std::vector<Count> trussness;  // indexed by EdgeId
  std::vector<char> settled;
};

namespace detail {

inline std::vector<LocalTriangle> weighted_triangles(const SupportResult& s) {
  std::vector<LocalTriangle> out;
  out.reserve(s.triangles.size());
  for (const auto& ts : s.triangles)
    if (ts.count > 0) out.push_back({ts.triangle.key, {ts.triangle.ab, ts.triangle.ac, ts.triangle.bc}, ts.count});
  return out;
}

inline std::vector<char> incident_mask(const TemporalGraph& g, VertexId q) {
  std::vector<char> mask(g.edge_count(), 0);
  for (const auto& nb : g.neighbors(q)) mask[nb.edge] = 1;
  return mask;
}

}  // namespace detail

/// Temporal trussness of every edge at `delta`. With an anchor, peeling stops
/// once the anchor's last incident edge is removed; k_max is then the anchor's
/// k* and unsettled edges are known to have trussness >= k*.
inline Decomposition decompose(const TemporalGraph& g, Delta delta, std::optional<VertexId> anchor = std::nullopt) {
  auto sup = temporal_support_all(g, delta);
  auto tris = detail::weighted_triangles(sup);
  std::vector<char> mask;
  if (anchor) mask = detail::incident_mask(g, *anchor);
  auto p = peel(g.edge_count(), tris, mask);
  return {p.k_max, std::move(p.trussness), std::move(p.settled)};
}

/// Groups the triangles of `triangles` that are reachable from `seeds` into
/// maximal higher-order components and returns each as a list of local edges.
/// Every triangle passed in is assumed to qualify (inside the edge set, N > 0).
inline std::vector<std::vector<std::uint32_t>> triangle_components(std::size_t edge_count,
                                                                   std::span<const LocalTriangle> triangles,
                                                                   std::span<const std::uint32_t> seeds,
                                                                   Connectivity mode) {
  std::vector<std::vector<std::uint32_t>> by_edge(edge_count);
  for (std::uint32_t i = 0; i < triangles.size(); ++i)
    for (auto e : triangles[i].edges) by_edge[e].push_back(i);
  std::unordered_map<VertexId, std::vector<std::uint32_t>> by_vertex;
  if (mode == Connectivity::paper)
    for (std::uint32_t i = 0; i < triangles.size(); ++i)
      for (auto v : {triangles[i].key.a, triangles[i].key.b, triangles[i].key.c}) by_vertex[v].push_back(i);

  std::vector<char> seen(triangles.size(), 0), edge_in(edge_count, 0);
  std::unordered_map<VertexId, char> vertex_done;
  std::vector<std::vector<std::uint32_t>> out;
  for (auto s : seeds) {
    if (s >= edge_count || edge_in[s] || by_edge[s].empty()) continue;
    std::vector<std::uint32_t> comp, queue;
    for (auto ti : by_edge[s])
      if (!seen[ti]) seen[ti] = 1, queue.push_back(ti);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const auto& t = triangles[queue[h]];
      for (auto e : t.edges) {
        if (!edge_in[e]) edge_in[e] = 1, comp.push_back(e);
        for (auto ti : by_edge[e])
          if (!seen[ti]) seen[ti] = 1, queue.push_back(ti);
      }
      if (mode == Connectivity::paper) {
        for (auto v : {t.key.a, t.key.b, t.key.c}) {
          if (vertex_done[v]) continue;
          vertex_done[v] = 1;
          for (auto ti : by_vertex[v])
            if (!seen[ti]) seen[ti] = 1, queue.push_back(ti);
        }
      }
    }
    if (!comp.empty()) {
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  }
  return out;
}

/// Higher-order components of `edge_set` reachable from `seeds`, using only
/// triangles that lie inside the set and have N(triangle, delta) > 0.
inline std::vector<std::vector<EdgeId>> higher_order_components(const TemporalGraph& g,
                                                                std::span<const EdgeId> edge_set, Delta delta,
                                                                std::span<const EdgeId> seeds,
                                                                Connectivity mode = Connectivity::paper) {
  std::vector<EdgeId> ids(edge_set.begin(), edge_set.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<EdgeId, std::uint32_t> local;
  for (std::uint32_t i = 0; i < ids.size(); ++i) local[ids[i]] = i;

  std::vector<LocalTriangle> tris;
  for_each_triangle(g, [&](const Triangle& t) {
    auto a = local.find(t.ab), b = local.find(t.ac), c = local.find(t.bc);
    if (a == local.end() || b == local.end() || c == local.end()) return;
    Count n = triangle_count(g, t, delta);
    if (n > 0) tris.push_back({t.key, {a->second, b->second, c->second}, n});
  });
  std::vector<std::uint32_t> local_seeds;
  for (auto s : seeds)
    if (auto it = local.find(s); it != local.end()) local_seeds.push_back(it->second);

  auto comps = triangle_components(ids.size(), tris, local_seeds, mode);
  std::vector<std::vector<EdgeId>> out;
  for (auto& c : comps) {
    std::vector<EdgeId> ge;
    for (auto e : c) ge.push_back(ids[e]);
    std::sort(ge.begin(), ge.end());
    out.push_back(std::move(ge));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Turns an anchored peel over local edges into a community: keeps edges with
/// trussness >= k* (plus everything still live) and returns the components
/// reachable from the anchored edges in that set.
inline std::vector<std::vector<std::uint32_t>> extract_communities(const PeelResult& p,
                                                                   std::span<const LocalTriangle> triangles,
                                                                   std::span<const char> anchor,
                                                                   Connectivity mode) {
  const std::size_t m = p.trussness.size();
  if (p.k_max == 0) return {};
  std::vector<char> keep(m, 0);
  for (std::size_t e = 0; e < m; ++e) keep[e] = !p.settled[e] || p.trussness[e] >= p.k_max;
  std::vector<LocalTriangle> inside;
  for (const auto& t : triangles)
    if (keep[t.edges[0]] && keep[t.edges[1]] && keep[t.edges[2]]) inside.push_back(t);
  std::vector<std::uint32_t> seeds;
  for (std::uint32_t e = 0; e < m; ++e)
    if (anchor[e] && keep[e]) seeds.push_back(e);
  return triangle_components(m, inside, seeds, mode);
}

/// Global search: all supports, anchored peeling from q, then the components
/// of the surviving subgraph that contain q.
inline CommunityResult gs_search(const TemporalGraph& g, VertexId q, Delta delta,
                                 Connectivity mode = Connectivity::paper) {
  if (q >= g.vertex_count()) throw InvalidArgument("unknown query vertex " + std::to_string(q));
  CommunityResult r;
  r.query = q;
  r.delta = delta;
  if (g.degree(q) == 0) return r;

  auto sup = temporal_support_all(g, delta);
  auto tris = detail::weighted_triangles(sup);
  auto mask = detail::incident_mask(g, q);
  auto p = peel(g.edge_count(), tris, mask);
  if (p.k_max == 0) return r;
  r.k_star = p.k_max;
  for (auto& c : extract_communities(p, tris, mask, mode)) r.components.emplace_back(c.begin(), c.end());
  r.normalize();
  return r;
}

}  // namespace tcs

#endif  // TCS_TRUSS_HPP
