#ifndef TCS_METRICS_HPP
#define TCS_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/tricount.hpp"
#include "tcs/types.hpp"

namespace tcs {

/// Span bound from the data: the rounded mean, over edges with at least two
/// timestamps, of each edge's mean gap between consecutive timestamps.
inline Delta estimate_delta_star(const TemporalGraph& g) {
  if (g.temporal_edge_count() == 0) throw InvalidArgument("cannot estimate delta* of an empty graph");
  double sum = 0;
  std::size_t used = 0;
  for (const auto& e : g.edges()) {
    if (e.timestamps.size() < 2) continue;
    sum += double(e.timestamps.back() - e.timestamps.front()) / double(e.timestamps.size() - 1);
    ++used;
  }
  if (used == 0) return 1;
  return static_cast<Delta>(std::llround(sum / double(used)));
}

/// How |T_S| in the density denominator is measured.
enum class TimeExtent {
  distinct,  // number of distinct timestamps on edges inside S
  window,    // last - first + 1 over those timestamps
};

struct TriangleCounts {
  Count inside = 0;    // all three vertices in S
  Count cut = 0;       // vertices on both sides
  Count vol_s = 0;     // at least one vertex in S
  Count vol_rest = 0;  // at least one vertex outside S
  friend bool operator==(const TriangleCounts&, const TriangleCounts&) = default;
};

struct MetricReport {
  double htd = 0;
  double htc = 0;
  Delta delta_star = 0;
  TriangleCounts triangles;
};

namespace detail {

inline std::vector<char> membership(const TemporalGraph& g, std::span<const VertexId> s) {
  std::vector<char> in(g.vertex_count(), 0);
  for (auto v : s) {
    if (v >= g.vertex_count()) throw InvalidArgument("unknown vertex " + std::to_string(v));
    in[v] = 1;
  }
  return in;
}

inline std::size_t distinct_count(std::span<const VertexId> s) {
  std::vector<VertexId> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return std::unique(v.begin(), v.end()) - v.begin();
}

}  // namespace detail

/// Classifies every temporal triangle with span <= delta_star by how many of
/// its vertices fall in S.
inline TriangleCounts classify_triangles(const TemporalGraph& g, std::span<const VertexId> s, Delta delta_star) {
  auto in = detail::membership(g, s);
  TriangleCounts c;
  for_each_triangle(g, [&](const Triangle& t) {
    int k = in[t.key.a] + in[t.key.b] + in[t.key.c];
    Count n = triangle_count(g, t, delta_star);
    if (n == 0) return;
    if (k == 3) c.inside += n;
    if (k > 0 && k < 3) c.cut += n;
    if (k > 0) c.vol_s += n;
    if (k < 3) c.vol_rest += n;
  });
  return c;
}

inline double htd(const TemporalGraph& g, std::span<const VertexId> s, Delta delta_star,
                  TimeExtent extent = TimeExtent::distinct) {
  auto in = detail::membership(g, s);
  const double size = double(detail::distinct_count(s));
  if (size < 3) return 0;
  std::vector<Timestamp> times;
  for (const auto& e : g.edges())
    if (in[e.u] && in[e.v]) times.insert(times.end(), e.timestamps.begin(), e.timestamps.end());
  if (times.empty()) return 0;
  std::sort(times.begin(), times.end());
  double span = extent == TimeExtent::distinct ? double(std::unique(times.begin(), times.end()) - times.begin())
                                               : double(times.back() - times.front() + 1);
  Count inside = 0;
  for_each_triangle(g, [&](const Triangle& t) {
    if (in[t.key.a] && in[t.key.b] && in[t.key.c]) inside += triangle_count(g, t, delta_star);
  });
  if (inside == 0) return 0;
  return std::cbrt(double(inside) / (size * (size - 1) * (size - 2) * span * span * span));
}

inline double htc_from_counts(const TriangleCounts& c) {
  Count denom = std::min(c.vol_s, c.vol_rest);
  return denom == 0 ? 0.0 : double(c.cut) / double(denom);
}

inline double htc(const TemporalGraph& g, std::span<const VertexId> s, Delta delta_star) {
  return htc_from_counts(classify_triangles(g, s, delta_star));
}

inline MetricReport evaluate(const TemporalGraph& g, std::span<const VertexId> s, Delta delta_star,
                             TimeExtent extent = TimeExtent::distinct) {
  MetricReport r;
  r.delta_star = delta_star;
  r.triangles = classify_triangles(g, s, delta_star);
  r.htc = htc_from_counts(r.triangles);
  r.htd = htd(g, s, delta_star, extent);
  return r;
}

}  // namespace tcs

#endif  // TCS_METRICS_HPP
