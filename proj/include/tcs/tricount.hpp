#ifndef TCS_TRICOUNT_HPP
#define TCS_TRICOUNT_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <optional>
#include <span>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/types.hpp"

namespace tcs {

/// Number of sliding-window counts performed by this process. The index query
/// path must leave it untouched.
inline std::atomic<std::uint64_t>& counting_calls() {
  static std::atomic<std::uint64_t> calls{0};
  return calls;
}

/// Counts triples (x, y, z), one timestamp per list, whose pairwise gaps are
/// all <= delta. Lists must be sorted ascending.
///
/// The shortest list drives the outer loop; a window over the middle list and
/// two monotone cursors over the longest list bound the work to
/// O(|T1| * (w2 + w3)) where w2, w3 are the window widths.
inline Count count_triangle_sliding(std::span<const Timestamp> t1, std::span<const Timestamp> t2,
                                    std::span<const Timestamp> t3, Delta delta) {
  counting_calls().fetch_add(1, std::memory_order_relaxed);
  std::array<std::span<const Timestamp>, 3> lists{t1, t2, t3};
  // stable: equal sizes keep the caller's (canonical edge) order
  std::stable_sort(lists.begin(), lists.end(), [](auto a, auto b) { return a.size() < b.size(); });
  const auto& a = lists[0];
  const auto& b = lists[1];
  const auto& c = lists[2];
  if (a.empty()) return 0;

  const std::uint64_t d = delta;
  Count total = 0;
  std::size_t lo2 = 0, hi2 = 0, lo3 = 0;
  for (std::uint64_t x : a) {
    while (lo2 < b.size() && b[lo2] + d < x) ++lo2;
    if (hi2 < lo2) hi2 = lo2;
    while (hi2 < b.size() && b[hi2] <= x + d) ++hi2;
    while (lo3 < c.size() && c[lo3] + d < x) ++lo3;
    std::size_t zlo = lo3, zhi = lo3;
    for (std::size_t j = lo2; j < hi2; ++j) {
      const std::uint64_t y = b[j];
      const std::uint64_t hi = std::max(x, y), lo = std::min(x, y);
      while (zlo < c.size() && c[zlo] + d < hi) ++zlo;
      if (zhi < zlo) zhi = zlo;
      while (zhi < c.size() && c[zhi] <= lo + d) ++zhi;
      total += zhi - zlo;
    }
  }
  return total;
}

/// A static triangle with the ids of its three edges (ab, ac, bc).
struct Triangle {
  TriangleKey key;
  EdgeId ab = 0, ac = 0, bc = 0;
  std::array<EdgeId, 3> edges() const { return {ab, ac, bc}; }
};

/// Calls fn(const Triangle&) once per static triangle, canonical a < b < c.
/// Common neighbours are found by scanning the lower-degree endpoint and
/// binary-searching the other list.
template <typename Fn>
void for_each_triangle(const TemporalGraph& g, Fn&& fn) {
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& se = g.edge(e);
    auto nu = g.neighbors(se.u), nv = g.neighbors(se.v);
    bool u_small = nu.size() <= nv.size();
    auto small = u_small ? nu : nv, large = u_small ? nv : nu;
    auto from = std::upper_bound(small.begin(), small.end(), se.v,
                                 [](VertexId x, const Neighbor& n) { return x < n.vertex; });
    auto cursor = std::upper_bound(large.begin(), large.end(), se.v,
                                   [](VertexId x, const Neighbor& n) { return x < n.vertex; });
    for (auto it = from; it != small.end(); ++it) {
      cursor = std::lower_bound(cursor, large.end(), it->vertex,
                                [](const Neighbor& n, VertexId x) { return n.vertex < x; });
      if (cursor == large.end()) break;
      if (cursor->vertex != it->vertex) continue;
      EdgeId to_u = u_small ? it->edge : cursor->edge;
      EdgeId to_v = u_small ? cursor->edge : it->edge;
      fn(Triangle{{se.u, se.v, it->vertex}, e, to_u, to_v});
    }
  }
}

inline std::vector<Triangle> enumerate_triangles(const TemporalGraph& g) {
  std::vector<Triangle> out;
  for_each_triangle(g, [&](const Triangle& t) { out.push_back(t); });
  std::sort(out.begin(), out.end(), [](const Triangle& x, const Triangle& y) { return x.key < y.key; });
  return out;
}

/// Calls fn(w, edge(u,w), edge(v,w)) for every common neighbour of u and v.
template <typename Fn>
void for_each_common_neighbor(const TemporalGraph& g, VertexId u, VertexId v, Fn&& fn) {
  auto nu = g.neighbors(u), nv = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i].vertex < nv[j].vertex) {
      ++i;
    } else if (nv[j].vertex < nu[i].vertex) {
      ++j;
    } else {
      fn(nu[i].vertex, nu[i].edge, nv[j].edge);
      ++i, ++j;
    }
  }
}

inline TriangleKey make_key(VertexId x, VertexId y, VertexId z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return {x, y, z};
}

inline Count triangle_count(const TemporalGraph& g, const Triangle& t, Delta delta) {
  return count_triangle_sliding(g.timestamps(t.ab), g.timestamps(t.ac), g.timestamps(t.bc), delta);
}

/// Per-edge delta-temporal support, indexed by EdgeId.
using SupportMap = std::vector<Count>;

struct TriangleStats {
  Triangle triangle;
  Count count = 0;  // N(triangle, delta)
};

struct SupportResult {
  SupportMap support;
  std::vector<TriangleStats> triangles;  // every static triangle, sorted by key
};

inline SupportResult temporal_support_all(const TemporalGraph& g, Delta delta) {
  SupportResult r;
  r.support.assign(g.edge_count(), 0);
  for (const auto& t : enumerate_triangles(g)) {
    Count n = triangle_count(g, t, delta);
    r.triangles.push_back({t, n});
    r.support[t.ab] += n;
    r.support[t.ac] += n;
    r.support[t.bc] += n;
  }
  return r;
}

/// Support of one edge. With `early_stop_at`, summation may stop once the
/// running total reaches it: the result is then >= early_stop_at, and exact
/// whenever the exact support is below it.
inline Count temporal_support_edge(const TemporalGraph& g, EdgeId e, Delta delta,
                                   std::optional<Count> early_stop_at = std::nullopt) {
  if (e >= g.edge_count()) throw InvalidArgument("unknown edge id " + std::to_string(e));
  const auto& se = g.edge(e);
  auto t_uv = g.timestamps(e);
  Count sum = 0;
  auto nu = g.neighbors(se.u), nv = g.neighbors(se.v);
  std::size_t i = 0, j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i].vertex < nv[j].vertex) {
      ++i;
    } else if (nv[j].vertex < nu[i].vertex) {
      ++j;
    } else {
      sum += count_triangle_sliding(t_uv, g.timestamps(nu[i].edge), g.timestamps(nv[j].edge), delta);
      if (early_stop_at && sum >= *early_stop_at) return sum;
      ++i, ++j;
    }
  }
  return sum;
}

}  // namespace tcs

#endif  // TCS_TRICOUNT_HPP
