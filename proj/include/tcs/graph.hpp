#ifndef TCS_GRAPH_HPP
#define TCS_GRAPH_HPP

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcs/types.hpp"

namespace tcs {

/// One timestamped interaction, as read from an edge list.
struct TemporalEdge {
  VertexId u = 0, v = 0;
  Timestamp t = 0;
  friend auto operator<=>(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Static projection of all interactions between one vertex pair; u < v.
struct StaticEdge {
  VertexId u = 0, v = 0;
  std::vector<Timestamp> timestamps;  // strictly increasing, non-empty
  friend bool operator==(const StaticEdge&, const StaticEdge&) = default;
};

struct Neighbor {
  VertexId vertex;
  EdgeId edge;
};

/// Immutable temporal graph: static adjacency plus per-edge timestamp lists.
///
/// Edge ids are positions in the canonical (u, v) order, so comparing ids
/// compares edges lexicographically. Adjacency lists are sorted by neighbor.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  /// Builds a graph over vertices 0..n-1. Self-loops are dropped, (u,v,t) and
  /// (v,u,t) are merged and duplicates collapse. `labels` maps ids back to the
  /// identifiers of the source file; identity when empty.
  static TemporalGraph from_edges(std::size_t n, std::vector<TemporalEdge> list,
                                  std::vector<std::int64_t> labels = {}) {
    TemporalGraph g;
    g.n_ = n;
    if (labels.empty()) {
      labels.resize(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
    }
    if (labels.size() != n) throw InvalidArgument("label count does not match vertex count");
    g.labels_ = std::move(labels);

    std::erase_if(list, [](const TemporalEdge& e) { return e.u == e.v; });
    for (auto& e : list) {
      if (e.u >= n || e.v >= n) throw InvalidArgument("edge endpoint out of range");
      if (e.t < 1) throw InvalidArgument("timestamps must be >= 1");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());

    for (const auto& e : list) {
      if (g.edges_.empty() || g.edges_.back().u != e.u || g.edges_.back().v != e.v)
        g.edges_.push_back(StaticEdge{e.u, e.v, {}});
      g.edges_.back().timestamps.push_back(e.t);
      g.t_max_ = std::max(g.t_max_, e.t);
    }
    g.m_temporal_ = list.size();
    g.build_adjacency();
    g.hash_ = hash_content(g.n_, g.edges_);
    return g;
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t temporal_edge_count() const noexcept { return m_temporal_; }
  Timestamp t_max() const noexcept { return t_max_; }

  const StaticEdge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const StaticEdge> edges() const noexcept { return edges_; }
  std::span<const Timestamp> timestamps(EdgeId e) const { return edges_.at(e).timestamps; }

  std::span<const Neighbor> neighbors(VertexId v) const {
    if (v >= n_) throw InvalidArgument("unknown vertex " + std::to_string(v));
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  /// Number of temporal edges incident to v.
  std::size_t temporal_degree(VertexId v) const {
    std::size_t d = 0;
    for (const auto& nb : neighbors(v)) d += edges_[nb.edge].timestamps.size();
    return d;
  }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
    if (u >= n_ || v >= n_ || u == v) return std::nullopt;
    auto nu = neighbors(u), nv = neighbors(v);
    if (nv.size() < nu.size()) std::swap(nu, nv), std::swap(u, v);
    auto it = std::lower_bound(nu.begin(), nu.end(), v,
                               [](const Neighbor& a, VertexId x) { return a.vertex < x; });
    if (it == nu.end() || it->vertex != v) return std::nullopt;
    return it->edge;
  }

  EdgeId edge_id(VertexId u, VertexId v) const {
    auto e = find_edge(u, v);
    if (!e) throw InvalidArgument("unknown edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return *e;
  }

  std::int64_t label(VertexId v) const { return labels_.at(v); }
  std::span<const std::int64_t> labels() const noexcept { return labels_; }

  std::optional<VertexId> vertex_of_label(std::int64_t label) const {
    // labels are sorted after load_graph; fall back to a scan otherwise
    if (std::is_sorted(labels_.begin(), labels_.end())) {
      auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
      if (it != labels_.end() && *it == label) return static_cast<VertexId>(it - labels_.begin());
      return std::nullopt;
    }
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<VertexId>(it - labels_.begin());
  }

  /// All temporal edges, sorted.
  std::vector<TemporalEdge> temporal_edges() const {
    std::vector<TemporalEdge> out;
    out.reserve(m_temporal_);
    for (const auto& e : edges_)
      for (auto t : e.timestamps) out.push_back({e.u, e.v, t});
    return out;
  }

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

  std::uint64_t content_hash() const noexcept { return hash_; }

 private:
  static std::uint64_t hash_content(std::size_t n, const std::vector<StaticEdge>& edges) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
      }
    };
    mix(n);
    mix(edges.size());
    for (const auto& e : edges) {
      mix(e.u), mix(e.v), mix(e.timestamps.size());
      for (auto t : e.timestamps) mix(t);
    }
    return h;
  }

  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) ++offsets_[e.u + 1], ++offsets_[e.v + 1];
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const auto& e = edges_[id];
      adjacency_[fill[e.u]++] = {e.v, id};
      adjacency_[fill[e.v]++] = {e.u, id};
    }
    for (std::size_t v = 0; v < n_; ++v)
      std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
                [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }

  std::size_t n_ = 0;
  std::vector<StaticEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<std::int64_t> labels_;
  Timestamp t_max_ = 0;
  std::size_t m_temporal_ = 0;
  std::uint64_t hash_ = hash_content(0, {});
};

struct LoadOptions {
  std::int64_t time_scale = 1;
  bool rebase = true;
};

namespace detail {

inline std::optional<std::int64_t> parse_int(std::string_view tok) {
  std::int64_t x = 0;
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return x;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Parses "u v t" lines. Extra columns are ignored; '#' and '%' start comments.
inline TemporalGraph parse_graph(std::istream& in, LoadOptions opt = {}) {
  if (opt.time_scale <= 0) throw InvalidArgument("time scale must be positive");
  struct Raw {
    std::int64_t u, v, t;
  };
  std::vector<Raw> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s(line);
    if (auto c = s.find_first_of("#%"); c != std::string_view::npos) s = s.substr(0, c);
    std::int64_t vals[3];
    int got = 0;
    std::size_t pos = 0;
    while (got < 3) {
      pos = s.find_first_not_of(" \t\r,", pos);
      if (pos == std::string_view::npos) break;
      auto end = s.find_first_of(" \t\r,", pos);
      auto tok = s.substr(pos, end == std::string_view::npos ? s.size() - pos : end - pos);
      auto x = detail::parse_int(tok);
      if (!x) throw ParseError("non-integer token '" + std::string(tok) + "'", lineno);
      vals[got++] = *x;
      pos = end == std::string_view::npos ? s.size() : end;
    }
    if (got == 0) continue;
    if (got < 3) throw ParseError("expected 'u v t'", lineno);
    if (vals[0] < 0 || vals[1] < 0) throw ParseError("negative vertex id", lineno);
    if (vals[0] == vals[1]) continue;
    raw.push_back({vals[0], vals[1], detail::floor_div(vals[2], opt.time_scale)});
  }
  if (raw.empty()) throw ParseError("no temporal edges in input", 0);

  std::int64_t shift = 0;
  if (opt.rebase) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    for (const auto& r : raw) lo = std::min(lo, r.t);
    shift = 1 - lo;
  }
  std::vector<std::int64_t> labels;
  labels.reserve(raw.size() * 2);
  for (const auto& r : raw) labels.push_back(r.u), labels.push_back(r.v);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto dense = [&](std::int64_t x) {
    return static_cast<VertexId>(std::lower_bound(labels.begin(), labels.end(), x) - labels.begin());
  };

  std::vector<TemporalEdge> list;
  list.reserve(raw.size());
  for (const auto& r : raw) {
    std::int64_t t = r.t + shift;
    if (t < 1 || t > std::numeric_limits<Timestamp>::max())
      throw ParseError("timestamp out of range after scaling (use --rebase)", 0);
    list.push_back({dense(r.u), dense(r.v), static_cast<Timestamp>(t)});
  }
  std::size_t n = labels.size();
  return TemporalGraph::from_edges(n, std::move(list), std::move(labels));
}

inline TemporalGraph load_graph(const std::string& path, LoadOptions opt = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return parse_graph(in, opt);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

/// Induced temporal subgraph on `keep`. Vertex ids are preserved.
inline TemporalGraph induced_subgraph(const TemporalGraph& g, std::span<const VertexId> keep) {
  std::vector<char> in(g.vertex_count(), 0);
  for (auto v : keep) {
    if (v >= g.vertex_count()) throw InvalidArgument("unknown vertex " + std::to_string(v));
    in[v] = 1;
  }
  std::vector<TemporalEdge> list;
  for (const auto& e : g.edges())
    if (in[e.u] && in[e.v])
      for (auto t : e.timestamps) list.push_back({e.u, e.v, t});
  return TemporalGraph::from_edges(g.vertex_count(), std::move(list),
                                   {g.labels().begin(), g.labels().end()});
}

/// Read-only window [start, start + delta] over a graph.
class SliceView {
 public:
  SliceView(const TemporalGraph& g, Timestamp start, Delta delta) : g_(&g), start_(start), delta_(delta) {}

  Timestamp start() const noexcept { return start_; }
  Timestamp end() const noexcept { return start_ + delta_; }
  Delta delta() const noexcept { return delta_; }
  const TemporalGraph& base() const noexcept { return *g_; }

  bool contains(Timestamp t) const noexcept { return t >= start_ && t <= end(); }

  /// Timestamps of edge e that fall inside the window.
  std::span<const Timestamp> timestamps(EdgeId e) const {
    auto ts = g_->timestamps(e);
    auto lo = std::lower_bound(ts.begin(), ts.end(), start_);
    auto hi = std::upper_bound(lo, ts.end(), end());
    return {lo, hi};
  }

  /// Edges with at least one timestamp in the window.
  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g_->edge_count(); ++e)
      if (!timestamps(e).empty()) out.push_back(e);
    return out;
  }

 private:
  const TemporalGraph* g_;
  Timestamp start_;
  Delta delta_;
};

inline SliceView slice(const TemporalGraph& g, Timestamp start, Delta delta) {
  if (start < 1 || std::uint64_t(start) + delta > g.t_max())
    throw InvalidArgument("window [" + std::to_string(start) + "," + std::to_string(std::uint64_t(start) + delta) +
                          "] exceeds [1," + std::to_string(g.t_max()) + "]");
  return SliceView(g, start, delta);
}

/// 64-bit FNV-1a over the canonical edge content; binds an index to its graph.
inline std::uint64_t fingerprint(const TemporalGraph& g) { return g.content_hash(); }

}  // namespace tcs

#endif  // TCS_GRAPH_HPP
