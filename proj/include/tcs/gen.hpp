#ifndef TCS_GEN_HPP
#define TCS_GEN_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_set>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/types.hpp"

namespace tcs {

/// mt19937_64 with an integer-only bounded draw, so a seed yields the same
/// stream on every platform (std::uniform_int_distribution does not promise that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw InvalidArgument("empty range");
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return next();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + x % range;
  }

  /// k distinct values from [0, n), in draw order.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    k = std::min(k, n);
    for (std::uint32_t i = 0; i < k; ++i) std::swap(pool[i], pool[between(i, n - 1)]);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

struct PlantedSpec {
  std::uint32_t count = 1;                // number of planted communities
  std::uint32_t size = 6;                 // vertices per community, wired as a clique
  Delta sigma = 2;                        // internal timestamps fall in [c, c + sigma]
  std::uint32_t timestamps_per_edge = 3;  // distinct interactions per internal edge, capped at sigma + 1
  std::uint32_t external_degree = 0;      // extra edges from each member to outside vertices
};

struct GenSpec {
  std::uint32_t n = 0;
  std::uint64_t m_static = 0;  // background static edges
  Timestamp t_max = 1;
  std::uint64_t seed = 0;
  std::uint32_t max_timestamps = 1;  // background edges get 1..max_timestamps interactions
  std::optional<PlantedSpec> planted;
};

struct Generated {
  TemporalGraph graph;
  std::vector<std::vector<VertexId>> communities;  // planted vertex sets, sorted
};

/// Background: m_static distinct uniform vertex pairs, each with timestamps
/// uniform on [1, t_max]. Planted communities are disjoint cliques whose
/// timestamps cluster inside a window of width sigma.
inline Generated generate_with_truth(const GenSpec& spec) {
  const std::uint64_t pairs = std::uint64_t(spec.n) * (spec.n ? spec.n - 1 : 0) / 2;
  if (spec.m_static > pairs)
    throw InvalidArgument("m_static = " + std::to_string(spec.m_static) + " exceeds " + std::to_string(pairs) +
                          " possible pairs");
  if (spec.t_max < 1) throw InvalidArgument("t_max must be >= 1");
  if (spec.max_timestamps < 1) throw InvalidArgument("max_timestamps must be >= 1");
  Rng rng(spec.seed);
  std::vector<TemporalEdge> list;
  auto stamp = [&](VertexId u, VertexId v, std::uint32_t k, Timestamp lo, Timestamp hi) {
    for (std::uint32_t i = 0; i < k; ++i) list.push_back({u, v, static_cast<Timestamp>(rng.between(lo, hi))});
  };
  std::vector<std::pair<VertexId, VertexId>> chosen;
  if (spec.m_static * 2 > pairs) {
    for (VertexId u = 0; u < spec.n; ++u)
      for (VertexId v = u + 1; v < spec.n; ++v) chosen.emplace_back(u, v);
    for (std::uint64_t i = 0; i < spec.m_static; ++i) std::swap(chosen[i], chosen[rng.between(i, pairs - 1)]);
    chosen.resize(spec.m_static);
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (chosen.size() < spec.m_static) {
      auto u = static_cast<VertexId>(rng.between(0, spec.n - 1));
      auto v = static_cast<VertexId>(rng.between(0, spec.n - 1));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (seen.insert(std::uint64_t(u) * spec.n + v).second) chosen.emplace_back(u, v);
    }
  }
  for (auto [u, v] : chosen)
    stamp(u, v, static_cast<std::uint32_t>(rng.between(1, spec.max_timestamps)), 1, spec.t_max);

  Generated out;
  if (spec.planted) {
    const auto& ps = *spec.planted;
    if (std::uint64_t(ps.count) * ps.size > spec.n) throw InvalidArgument("planted communities exceed n");
    auto members = rng.sample(spec.n, ps.count * ps.size);
    std::vector<char> planted(spec.n, 0);
    for (auto v : members) planted[v] = 1;
    for (std::uint32_t c = 0; c < ps.count; ++c) {
      std::vector<VertexId> s(members.begin() + c * ps.size, members.begin() + (c + 1) * ps.size);
      std::sort(s.begin(), s.end());
      Timestamp hi_start = spec.t_max > ps.sigma ? spec.t_max - ps.sigma : 1;
      auto start = static_cast<Timestamp>(rng.between(1, hi_start));
      Timestamp end = std::min<Timestamp>(spec.t_max, start + ps.sigma);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
          for (auto off : rng.sample(end - start + 1, ps.timestamps_per_edge)) list.push_back({s[i], s[j], start + off});
      const std::uint32_t outside = spec.n - ps.count * ps.size;
      if (outside > 0)
        for (auto v : s)
          for (std::uint32_t k = 0; k < ps.external_degree; ++k) {
            VertexId w;
            do w = static_cast<VertexId>(rng.between(0, spec.n - 1));
            while (planted[w]);
            stamp(v, w, 1, 1, spec.t_max);
          }
      out.communities.push_back(std::move(s));
    }
  }
  out.graph = TemporalGraph::from_edges(spec.n, std::move(list));
  return out;
}

inline TemporalGraph generate(const GenSpec& spec) { return generate_with_truth(spec).graph; }

/// Induced subgraph on round(fraction * n) vertices drawn uniformly.
inline TemporalGraph downsample_vertices(const TemporalGraph& g, double fraction, std::uint64_t seed) {
  if (!(fraction > 0 && fraction <= 1)) throw InvalidArgument("fraction must be in (0, 1]");
  auto n = static_cast<std::uint32_t>(g.vertex_count());
  auto k = static_cast<std::uint32_t>(std::llround(fraction * n));
  Rng rng(seed);
  auto keep = rng.sample(n, k);
  return induced_subgraph(g, keep);
}

}  // namespace tcs

#endif  // TCS_GEN_HPP
