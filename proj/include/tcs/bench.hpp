#ifndef TCS_BENCH_HPP
#define TCS_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "tcs/gen.hpp"
#include "tcs/graph.hpp"

namespace tcs {

/// Vertices with at least one edge, sorted by ascending temporal degree (ties
/// by id) and cut into `count` contiguous buckets whose sizes differ by <= 1.
inline std::vector<std::vector<VertexId>> degree_buckets(const TemporalGraph& g, std::size_t count = 5) {
  if (count == 0) throw InvalidArgument("bucket count must be positive");
  std::vector<std::pair<std::size_t, VertexId>> order;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 0) order.emplace_back(g.temporal_degree(v), v);
  std::sort(order.begin(), order.end());
  std::vector<std::vector<VertexId>> buckets(count);
  const std::size_t base = order.size() / count, extra = order.size() % count;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < count; ++b) {
    std::size_t take = base + (b < extra ? 1 : 0);
    for (std::size_t i = 0; i < take; ++i) buckets[b].push_back(order[pos++].second);
  }
  return buckets;
}

struct QuerySample {
  VertexId q;
  std::size_t bucket;
};

/// Spreads `total` queries evenly over the buckets, drawing without
/// replacement inside each bucket.
inline std::vector<QuerySample> sample_queries(const std::vector<std::vector<VertexId>>& buckets, std::size_t total,
                                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<QuerySample> out;
  const std::size_t nb = buckets.size();
  for (std::size_t b = 0; b < nb; ++b) {
    std::size_t want = total / nb + (b < total % nb ? 1 : 0);
    auto pick = rng.sample(static_cast<std::uint32_t>(buckets[b].size()), static_cast<std::uint32_t>(want));
    for (auto i : pick) out.push_back({buckets[b][i], b});
  }
  return out;
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

/// Nearest-rank percentile, p in [0, 100].
inline double percentile(std::vector<double> xs, double p) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * double(xs.size())));
  return xs[std::clamp<std::size_t>(rank, 1, xs.size()) - 1];
}

/// Wall-clock milliseconds of one call.
inline double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct EngineTimings {
  std::string engine;
  std::vector<double> per_query_ms;  // median over repetitions, parallel to the samples
};

/// Times `run(q)` for every sample, `reps` times each, keeping the median.
inline EngineTimings time_engine(const std::string& name, const std::vector<QuerySample>& samples, unsigned reps,
                                 const std::function<void(VertexId)>& run) {
  EngineTimings t{name, {}};
  for (const auto& s : samples) {
    std::vector<double> r;
    for (unsigned i = 0; i < std::max(1u, reps); ++i) r.push_back(time_ms([&] { run(s.q); }));
    t.per_query_ms.push_back(median(r));
  }
  return t;
}

}  // namespace tcs

#endif  // TCS_BENCH_HPP
