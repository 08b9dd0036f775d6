#ifndef TCS_TTSQUERY_HPP
#define TCS_TTSQUERY_HPP

#include <algorithm>
#include <deque>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/tricount.hpp"
#include "tcs/truss.hpp"
#include "tcs/ttindex.hpp"
#include "tcs/types.hpp"

namespace tcs {

struct SeedSelection {
  Count k_star = 0;
  std::vector<EdgeId> seeds;  // q's edges with tau == k_star, in adjacency order
};

/// Phase 1 of the index query: scans q's edges, keeping a queue of those whose
/// tau reaches the running maximum and evicting the ones left behind.
inline SeedSelection select_seeds(const TemporalGraph& g, const TTIndex& idx, VertexId q, Delta delta) {
  SeedSelection s;
  std::deque<std::pair<EdgeId, Count>> queue;
  for (const auto& nb : g.neighbors(q)) {
    Count tau = find_index(idx, nb.edge, delta).tau;
    if (tau == 0 || tau < s.k_star) continue;
    if (tau > s.k_star) {
      s.k_star = tau;
      while (!queue.empty() && queue.front().second < tau) queue.pop_front();
    }
    queue.emplace_back(nb.edge, tau);
  }
  for (const auto& [e, tau] : queue) s.seeds.push_back(e);
  return s;
}

/// Index-accelerated q-MDT search. Uses only skyline lookups and triangle
/// activations, never a temporal count.
inline CommunityResult tts_query(const TemporalGraph& g, const TTIndex& idx, VertexId q, Delta delta,
                                 Connectivity mode = Connectivity::paper) {
  check_fingerprint(idx, g);
  if (q >= g.vertex_count()) throw InvalidArgument("unknown query vertex " + std::to_string(q));
  require_coverage(idx, delta);
  CommunityResult r;
  r.query = q;
  r.delta = delta;
  auto sel = select_seeds(g, idx, q, delta);
  if (sel.k_star == 0) return r;
  r.k_star = sel.k_star;
  const Count k = sel.k_star;

  auto strong = [&](EdgeId e) { return idx.edges[e].skyline.lookup(delta).tau >= k; };
  auto live = [&](VertexId a, VertexId b, VertexId c) {
    auto act = idx.activation(make_key(a, b, c));
    return act && *act <= delta;
  };

  std::vector<char> edge_in(g.edge_count(), 0);
  for (auto s : sel.seeds) {
    if (edge_in[s]) continue;
    std::vector<EdgeId> comp;
    auto take = [&](EdgeId e) {
      if (edge_in[e]) return false;
      edge_in[e] = 1;
      comp.push_back(e);
      return true;
    };

    if (mode == Connectivity::strict_edge) {
      take(s);
      for (std::size_t h = 0; h < comp.size(); ++h) {
        EdgeId e = comp[h];
        const auto& se = g.edge(e);
        for_each_common_neighbor(g, se.u, se.v, [&](VertexId w, EdgeId uw, EdgeId vw) {
          if (!live(se.u, se.v, w) || !strong(uw) || !strong(vw)) return;
          take(uw), take(vw);
        });
      }
    } else {
      // triangles meeting at a vertex are connected, so reach vertices instead
      std::vector<VertexId> reached{g.edge(s).u, g.edge(s).v};
      std::vector<char> seen(g.vertex_count(), 0);
      seen[reached[0]] = seen[reached[1]] = 1;
      for (std::size_t h = 0; h < reached.size(); ++h) {
        VertexId x = reached[h];
        for (const auto& nb : g.neighbors(x)) {
          if (!strong(nb.edge)) continue;
          VertexId y = nb.vertex;
          for_each_common_neighbor(g, x, y, [&](VertexId w, EdgeId xw, EdgeId yw) {
            if (!live(x, y, w) || !strong(xw) || !strong(yw)) return;
            take(nb.edge), take(xw), take(yw);
            for (auto v : {y, w})
              if (!seen[v]) seen[v] = 1, reached.push_back(v);
          });
        }
      }
    }
    if (!comp.empty()) r.components.push_back(std::move(comp));
  }
  r.normalize();
  return r;
}

}  // namespace tcs

#endif  // TCS_TTSQUERY_HPP
