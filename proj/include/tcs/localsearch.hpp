#ifndef TCS_LOCALSEARCH_HPP
#define TCS_LOCALSEARCH_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/tricount.hpp"
#include "tcs/truss.hpp"
#include "tcs/types.hpp"

namespace tcs {

/// Memoised N(triangle, delta) and TSup_G(edge, delta) for one query.
class SupportOracle {
 public:
  SupportOracle(const TemporalGraph& g, Delta delta, bool early_stop) : g_(&g), delta_(delta), early_stop_(early_stop) {}

  Count triangle(const TriangleKey& key, EdgeId uv, EdgeId uw, EdgeId vw) {
    auto [it, fresh] = tri_.try_emplace(key, 0);
    if (fresh) it->second = count_triangle_sliding(g_->timestamps(uv), g_->timestamps(uw), g_->timestamps(vw), delta_);
    return it->second;
  }

  /// Exact support when below `k`; otherwise some value >= k. Thresholds only
  /// decrease during a search, so a value capped at an earlier k stays valid.
  Count support(EdgeId e, Count k) {
    if (auto it = sup_.find(e); it != sup_.end() && (it->second.exact || it->second.value >= k))
      return it->second.value;
    const auto& se = g_->edge(e);
    Count sum = 0;
    bool exact = true;
    for_each_common_neighbor_until(se.u, se.v, [&](VertexId w, EdgeId uw, EdgeId vw) {
      sum += triangle(make_key(se.u, se.v, w), e, uw, vw);
      if (early_stop_ && sum >= k && k > 0) {
        exact = false;
        return false;
      }
      return true;
    });
    sup_[e] = {sum, exact};
    return sum;
  }

  Count exact_support(EdgeId e) { return support(e, std::numeric_limits<Count>::max()); }

  const TemporalGraph& graph() const { return *g_; }
  Delta delta() const { return delta_; }

 private:
  template <typename Fn>
  void for_each_common_neighbor_until(VertexId u, VertexId v, Fn&& fn) {
    auto nu = g_->neighbors(u), nv = g_->neighbors(v);
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
      if (nu[i].vertex < nv[j].vertex) {
        ++i;
      } else if (nv[j].vertex < nu[i].vertex) {
        ++j;
      } else {
        if (!fn(nu[i].vertex, nu[i].edge, nv[j].edge)) return;
        ++i, ++j;
      }
    }
  }

  struct Cached {
    Count value;
    bool exact;
  };
  const TemporalGraph* g_;
  Delta delta_;
  bool early_stop_;
  std::unordered_map<TriangleKey, Count, TriangleKeyHash> tri_;
  std::unordered_map<EdgeId, Cached> sup_;
};

struct ExpansionBatch {
  std::vector<EdgeId> batch;     // admitted this round, TSup_G >= k
  std::vector<EdgeId> deferred;  // seen with TSup_G < k, retried next round
};

/// Compute-while-expanding exploration from q.
///
/// Edge marks: 0 unvisited, 1 admitted, -1 deferred. The first round seeds from
/// q's edges; later rounds resume from the deferred queue. In strict-edge mode
/// expansion crosses triangles with N > 0; when such a triangle exposes a
/// sub-threshold edge only the smaller-support one is deferred. In paper mode
/// triangles may also meet at a vertex, so every endpoint of an admitted edge
/// has its incident edges examined.
class Expander {
 public:
  Expander(SupportOracle& oracle, VertexId q, Connectivity mode) : oracle_(&oracle), q_(q), mode_(mode) {}

  ExpansionBatch expand(Count k, std::span<const EdgeId> deferred_in = {}) {
    const auto& g = oracle_->graph();
    ExpansionBatch out;
    const Count floor = mode_ == Connectivity::paper ? std::max<Count>(k, 1) : k;
    std::vector<EdgeId> queue;
    std::unordered_set<EdgeId> parked;
    auto park = [&](EdgeId e) {
      if (mark(e) == 1) return;
      marks_[e] = -1;
      if (parked.insert(e).second) out.deferred.push_back(e);
    };
    auto offer = [&](EdgeId e, Count need) {
      if (mark(e) != 0) return;
      if (oracle_->support(e, k) >= need) {
        marks_[e] = 1;
        queue.push_back(e);
      } else {
        park(e);
      }
    };

    if (first_round_) {
      first_round_ = false;
      if (mode_ == Connectivity::paper) {
        reached_.insert(q_);
        for (const auto& nb : g.neighbors(q_)) offer(nb.edge, floor);
      } else {
        for (const auto& nb : g.neighbors(q_)) offer(nb.edge, k);
      }
    }
    for (auto e : deferred_in)
      if (mark(e) == -1) queue.push_back(e);

    for (std::size_t h = 0; h < queue.size(); ++h) {
      EdgeId e = queue[h];
      if (mark(e) == -1) {
        if (oracle_->support(e, k) < floor) {
          park(e);
          continue;
        }
        marks_[e] = 1;
      }
      if (admitted_.count(e)) continue;
      admitted_.insert(e);
      out.batch.push_back(e);
      const auto& se = g.edge(e);
      if (mode_ == Connectivity::paper) {
        for (auto x : {se.u, se.v}) {
          if (!reached_.insert(x).second) continue;
          for (const auto& nb : g.neighbors(x)) offer(nb.edge, floor);
        }
        continue;
      }
      for_each_common_neighbor(g, se.u, se.v, [&](VertexId w, EdgeId uw, EdgeId vw) {
        if (oracle_->triangle(make_key(se.u, se.v, w), e, uw, vw) == 0) return;
        Count s1 = oracle_->support(uw, k), s2 = oracle_->support(vw, k);
        if (s1 < k || s2 < k) park(s1 <= s2 ? uw : vw);
        if (mark(uw) == 0 && s1 >= k) marks_[uw] = 1, queue.push_back(uw);
        if (mark(vw) == 0 && s2 >= k) marks_[vw] = 1, queue.push_back(vw);
      });
    }
    return out;
  }

  int mark(EdgeId e) const {
    auto it = marks_.find(e);
    return it == marks_.end() ? 0 : it->second;
  }

 private:
  SupportOracle* oracle_;
  VertexId q_;
  Connectivity mode_;
  bool first_round_ = true;
  std::unordered_map<EdgeId, signed char> marks_;
  std::unordered_set<EdgeId> admitted_;
  std::unordered_set<VertexId> reached_;
};

/// Fresh single-round expansion at threshold k.
inline ExpansionBatch expanding(const TemporalGraph& g, Delta delta, VertexId q, Count k,
                                Connectivity mode = Connectivity::strict_edge) {
  SupportOracle oracle(g, delta, true);
  Expander ex(oracle, q, mode);
  return ex.expand(k);
}

struct LocalSearchTrace {
  std::vector<Count> thresholds;           // k_m per round
  std::vector<std::size_t> candidate_sizes;  // |H| after each round
  std::vector<Count> round_k;              // k_H* per round
  bool fell_back = false;
};

struct LocalSearchOptions {
  Connectivity mode = Connectivity::paper;
  bool early_stop = true;
  LocalSearchTrace* trace = nullptr;
};

namespace detail {

/// The candidate subgraph H with supports restricted to triangles inside it.
class Candidate {
 public:
  explicit Candidate(SupportOracle& oracle) : oracle_(&oracle) {}

  void add(EdgeId e) {
    if (local_.count(e)) return;
    auto id = static_cast<std::uint32_t>(global_.size());
    local_[e] = id;
    global_.push_back(e);
    const auto& g = oracle_->graph();
    const auto& se = g.edge(e);
    for_each_common_neighbor(g, se.u, se.v, [&](VertexId w, EdgeId uw, EdgeId vw) {
      auto a = local_.find(uw), b = local_.find(vw);
      if (a == local_.end() || b == local_.end()) return;
      auto key = make_key(se.u, se.v, w);
      Count n = oracle_->triangle(key, e, uw, vw);
      if (n > 0) triangles_.push_back({key, {id, a->second, b->second}, n});
    });
  }

  std::size_t size() const { return global_.size(); }
  std::span<const LocalTriangle> triangles() const { return triangles_; }
  EdgeId global(std::uint32_t i) const { return global_[i]; }

  std::vector<char> anchor_mask(VertexId q) const {
    const auto& g = oracle_->graph();
    std::vector<char> mask(global_.size(), 0);
    for (std::uint32_t i = 0; i < global_.size(); ++i) {
      const auto& se = g.edge(global_[i]);
      mask[i] = se.u == q || se.v == q;
    }
    return mask;
  }

 private:
  SupportOracle* oracle_;
  std::unordered_map<EdgeId, std::uint32_t> local_;
  std::vector<EdgeId> global_;
  std::vector<LocalTriangle> triangles_;
};

}  // namespace detail

/// Local search for the q-MDT: binary search over the support threshold, each
/// round growing the candidate subgraph H and peeling it from q.
///
/// Bounds start at the min/max support of q's edges. A round whose peel gives
/// k_H = 0 proves k* < k_m; 0 < k_H < k_m proves k_H <= k* < k_m; k_H >= k_m
/// means H already holds the answer. Every round lowers k_h below k_m, so the
/// thresholds strictly decrease.
inline CommunityResult ls_search(const TemporalGraph& g, VertexId q, Delta delta, LocalSearchOptions opt = {}) {
  if (q >= g.vertex_count()) throw InvalidArgument("unknown query vertex " + std::to_string(q));
  CommunityResult r;
  r.query = q;
  r.delta = delta;
  if (g.degree(q) == 0) return r;

  SupportOracle oracle(g, delta, opt.early_stop);
  Count k_lo = std::numeric_limits<Count>::max(), k_hi = 0;
  for (const auto& nb : g.neighbors(q)) {
    Count s = oracle.exact_support(nb.edge);
    k_lo = std::min(k_lo, s);
    k_hi = std::max(k_hi, s);
  }
  if (k_hi == 0) return r;
  const Count proven_floor = 1;  // some q-edge lies in a triangle with N > 0

  Expander expander(oracle, q, opt.mode);
  detail::Candidate h(oracle);
  std::vector<EdgeId> deferred;
  while (k_lo <= k_hi) {
    Count k_m = k_lo + (k_hi - k_lo) / 2;
    auto round = expander.expand(k_m, deferred);
    deferred = std::move(round.deferred);
    for (auto e : round.batch) h.add(e);

    auto mask = h.anchor_mask(q);
    auto p = peel(h.size(), h.triangles(), mask);
    if (opt.trace) {
      opt.trace->thresholds.push_back(k_m);
      opt.trace->candidate_sizes.push_back(h.size());
      opt.trace->round_k.push_back(p.k_max);
    }
    if (p.k_max > 0 && p.k_max >= k_m) {
      r.k_star = p.k_max;
      for (const auto& c : extract_communities(p, h.triangles(), mask, opt.mode)) {
        std::vector<EdgeId> ge;
        for (auto e : c) ge.push_back(h.global(e));
        r.components.push_back(std::move(ge));
      }
      r.normalize();
      return r;
    }
    if (k_m == 0) return r;
    if (p.k_max == 0) {
      k_hi = k_m - 1;
      if (k_hi < k_lo) k_lo = proven_floor;
    } else {
      k_lo = p.k_max;
      k_hi = k_m - 1;
    }
  }
  // unreachable while the bounds above hold; kept as a safety net
  if (opt.trace) opt.trace->fell_back = true;
  return gs_search(g, q, delta, opt.mode);
}

}  // namespace tcs

#endif  // TCS_LOCALSEARCH_HPP
