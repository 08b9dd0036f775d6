#ifndef TCS_TTINDEX_HPP
#define TCS_TTINDEX_HPP

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/tricount.hpp"
#include "tcs/truss.hpp"
#include "tcs/types.hpp"

namespace tcs {

struct SkylinePoint {
  Delta delta = 0;
  Count tau = 0;
  friend bool operator==(const SkylinePoint&, const SkylinePoint&) = default;
};

/// (delta, trussness) pairs, strictly increasing in both coordinates. A pair
/// is kept only if no earlier pair has an equal or larger trussness.
class SkylineList {
 public:
  SkylineList() = default;
  explicit SkylineList(std::vector<SkylinePoint> pts) : points_(std::move(pts)) {}

  /// Records trussness `tau` at `delta`; returns false if it is dominated.
  bool add(Delta delta, Count tau) {
    if (tau == 0) return false;
    if (!points_.empty() && (tau <= points_.back().tau || delta <= points_.back().delta)) return false;
    points_.push_back({delta, tau});
    return true;
  }

  /// The stored pair with the largest delta' <= delta, or (0, 0).
  SkylinePoint lookup(Delta delta) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), delta,
                               [](Delta d, const SkylinePoint& p) { return d < p.delta; });
    if (it == points_.begin()) return {};
    return *std::prev(it);
  }

  std::span<const SkylinePoint> points() const noexcept { return points_; }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }

  friend bool operator==(const SkylineList&, const SkylineList&) = default;

 private:
  std::vector<SkylinePoint> points_;
};

struct EdgeSkyline {
  VertexId u = 0, v = 0;
  SkylineList skyline;
  friend bool operator==(const EdgeSkyline&, const EdgeSkyline&) = default;
};

struct TriangleActivation {
  TriangleKey key;
  Delta activation = 0;  // smallest delta with N(triangle, delta) > 0
  friend bool operator==(const TriangleActivation&, const TriangleActivation&) = default;
};

/// Temporal-trussness index: per-edge skylines plus per-triangle activation.
///
/// Edge records follow the source graph's edge order, so an EdgeId of that
/// graph addresses its record directly. `coverage` is the largest delta that
/// was processed; when `saturated` is set every larger delta has the same
/// answers and lookups beyond coverage are valid.
struct TTIndex {
  std::uint64_t graph_fingerprint = 0;
  Timestamp t_max = 0;
  Delta coverage = 0;
  bool saturated = true;
  std::vector<EdgeSkyline> edges;
  std::vector<TriangleActivation> triangles;  // sorted by key

  std::optional<Delta> activation(const TriangleKey& key) const {
    auto it = std::lower_bound(triangles.begin(), triangles.end(), key,
                               [](const TriangleActivation& a, const TriangleKey& k) { return a.key < k; });
    if (it == triangles.end() || it->key != key) return std::nullopt;
    return it->activation;
  }

  bool covers(Delta delta) const noexcept { return saturated || delta <= coverage; }

  friend bool operator==(const TTIndex&, const TTIndex&) = default;
};

inline void require_coverage(const TTIndex& idx, Delta delta) {
  if (!idx.covers(delta))
    throw InvalidArgument("index covers delta <= " + std::to_string(idx.coverage) + ", queried " +
                          std::to_string(delta));
}

/// Skyline lookup for the edge with id `e` in the indexed graph.
inline SkylinePoint find_index(const TTIndex& idx, EdgeId e, Delta delta) {
  if (e >= idx.edges.size()) throw InvalidArgument("unknown edge id " + std::to_string(e));
  require_coverage(idx, delta);
  return idx.edges[e].skyline.lookup(delta);
}

inline SkylinePoint find_index(const TTIndex& idx, VertexId u, VertexId v, Delta delta) {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(idx.edges.begin(), idx.edges.end(), std::pair{u, v},
                             [](const EdgeSkyline& e, const std::pair<VertexId, VertexId>& k) {
                               return std::pair{e.u, e.v} < k;
                             });
  if (it == idx.edges.end() || it->u != u || it->v != v)
    throw InvalidArgument("unknown edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  require_coverage(idx, delta);
  return it->skyline.lookup(delta);
}

/// Incremental per-delta counting state over the delta-slices of a graph.
///
/// Window i at delta d is [i, i + d]; W(i, d) is the product of the three
/// edges' timestamp counts inside it and Phi(i, d) = W(i, d) - W(i, d - 1).
/// Raising delta adds exactly the triples whose span equals the new delta:
///
///   N(d) - N(d - 1) = sum_i Phi(i, d) - sum_{i >= 2} Phi(i, d - 1)
///
/// so each step needs the windows grown by the snapshot at i + d and the
/// carried sum of the previous step's increments minus its first window.
class SliceCounters {
 public:
  static constexpr Delta kInactive = std::numeric_limits<Delta>::max();

  explicit SliceCounters(const TemporalGraph& g) : g_(&g) {
    for_each_triangle(g, [&](const Triangle& t) { tris_.push_back(t); });
    std::sort(tris_.begin(), tris_.end(), [](const Triangle& a, const Triangle& b) { return a.key < b.key; });

    offsets_.assign(g.edge_count() + 1, 0);
    for (const auto& t : tris_)
      for (auto e : t.edges()) ++offsets_[e + 1];
    for (std::size_t i = 0; i < g.edge_count(); ++i) offsets_[i + 1] += offsets_[i];
    incident_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t i = 0; i < tris_.size(); ++i)
      for (auto e : tris_[i].edges()) incident_[fill[e]++] = i;

    snapshot_offsets_.assign(std::size_t(g.t_max()) + 2, 0);
    for (const auto& e : g.edges())
      for (auto t : e.timestamps) ++snapshot_offsets_[t + 1];
    for (std::size_t t = 0; t + 1 < snapshot_offsets_.size(); ++t) snapshot_offsets_[t + 1] += snapshot_offsets_[t];
    snapshot_edges_.resize(snapshot_offsets_.back());
    std::vector<std::uint32_t> sfill(snapshot_offsets_.begin(), snapshot_offsets_.end() - 1);
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      for (auto t : g.edge(id).timestamps) snapshot_edges_[sfill[t]++] = id;

    const std::size_t nt = tris_.size();
    counts_.assign(nt, 0);
    activation_.assign(nt, kInactive);
    support_.assign(g.edge_count(), 0);
    carried_.assign(nt, 0);
    phi_total_.assign(nt, 0);
    phi_first_.assign(nt, 0);
    stamp_.assign(nt, 0);
    listed_.assign(nt, 0);

    for (const auto& t : tris_) {
      Timestamp lo = std::numeric_limits<Timestamp>::max(), hi = 0;
      for (auto e : t.edges()) {
        auto ts = g.timestamps(e);
        lo = std::min(lo, ts.front());
        hi = std::max(hi, ts.back());
      }
      saturation_ = std::max<Delta>(saturation_, hi - lo);
    }
  }

  const TemporalGraph& graph() const noexcept { return *g_; }
  std::optional<Delta> last_delta() const noexcept { return last_; }
  Delta next_delta() const noexcept { return last_ ? *last_ + 1 : 0; }

  /// Beyond this delta every triangle count equals its full product.
  Delta saturation_delta() const noexcept { return saturation_; }

  std::span<const Triangle> triangles() const noexcept { return tris_; }
  /// N(triangle, delta) over the whole graph, parallel to triangles().
  std::span<const Count> triangle_counts() const noexcept { return counts_; }
  /// TSup(edge, delta), indexed by EdgeId.
  std::span<const Count> supports() const noexcept { return support_; }
  /// First delta with N > 0, or kInactive.
  std::span<const Delta> activations() const noexcept { return activation_; }

 private:
  friend void count_all_tsup_step(const TemporalGraph& g, Delta delta, SliceCounters& state);

  std::uint64_t window_product(const Triangle& t, std::uint64_t lo, std::uint64_t hi) const {
    std::uint64_t p = 1;
    for (auto e : t.edges()) {
      auto ts = g_->timestamps(e);
      auto a = std::lower_bound(ts.begin(), ts.end(), lo);
      auto b = std::upper_bound(a, ts.end(), hi);
      p *= static_cast<std::uint64_t>(b - a);
      if (p == 0) return 0;
    }
    return p;
  }

  const TemporalGraph* g_;
  std::vector<Triangle> tris_;
  std::vector<std::uint32_t> offsets_, incident_;
  std::vector<std::uint32_t> snapshot_offsets_, snapshot_edges_;
  std::vector<Count> counts_, support_;
  std::vector<Delta> activation_;
  std::vector<std::int64_t> carried_, phi_total_, phi_first_;
  std::vector<std::uint64_t> stamp_;
  std::vector<char> listed_;
  std::vector<std::uint32_t> carried_list_;
  std::uint64_t clock_ = 0;
  std::optional<Delta> last_;
  Delta saturation_ = 0;
};

/// Advances `state` from delta - 1 to delta, leaving N(., delta) and
/// TSup(., delta) for the whole graph in it.
inline void count_all_tsup_step(const TemporalGraph& g, Delta delta, SliceCounters& state) {
  if (&g != state.g_) throw InvalidArgument("counting state belongs to a different graph");
  if (delta != state.next_delta())
    throw InvalidArgument("counting state holds delta " +
                          (state.last_ ? std::to_string(*state.last_) : std::string("none")) + ", cannot step to " +
                          std::to_string(delta));
  const Timestamp t_max = g.t_max();
  std::vector<std::uint32_t> touched;
  if (std::uint64_t(delta) + 1 <= t_max) {
    const Timestamp windows = t_max - delta;
    for (Timestamp t = 1; t <= windows; ++t) {
      const Timestamp snap = t + delta;
      const std::uint64_t stamp = ++state.clock_;
      for (auto k = state.snapshot_offsets_[snap]; k < state.snapshot_offsets_[snap + 1]; ++k) {
        EdgeId e = state.snapshot_edges_[k];
        for (auto i = state.offsets_[e]; i < state.offsets_[e + 1]; ++i) {
          auto ti = state.incident_[i];
          if (state.stamp_[ti] == stamp) continue;  // triangle already grown for this window
          state.stamp_[ti] = stamp;
          const auto& tri = state.tris_[ti];
          std::uint64_t grown = state.window_product(tri, t, std::uint64_t(t) + delta);
          std::uint64_t before = delta == 0 ? 0 : state.window_product(tri, t, std::uint64_t(t) + delta - 1);
          if (grown == before) continue;
          auto phi = static_cast<std::int64_t>(grown - before);
          if (!state.listed_[ti]) state.listed_[ti] = 1, touched.push_back(ti);
          state.phi_total_[ti] += phi;
          if (t == 1) state.phi_first_[ti] += phi;
        }
      }
    }
  }
  for (auto ti : state.carried_list_)
    if (!state.listed_[ti]) state.listed_[ti] = 1, touched.push_back(ti);

  std::vector<std::uint32_t> next_carried;
  for (auto ti : touched) {
    std::int64_t inc = state.phi_total_[ti] - state.carried_[ti];
    if (inc != 0) {
      if (state.activation_[ti] == SliceCounters::kInactive) state.activation_[ti] = delta;
      state.counts_[ti] += static_cast<Count>(inc);
      for (auto e : state.tris_[ti].edges()) state.support_[e] += static_cast<Count>(inc);
    }
    state.carried_[ti] = state.phi_total_[ti] - state.phi_first_[ti];
    if (state.carried_[ti] != 0) next_carried.push_back(ti);
    state.phi_total_[ti] = state.phi_first_[ti] = 0;
    state.listed_[ti] = 0;
  }
  state.carried_list_ = std::move(next_carried);
  state.last_ = delta;
}

struct BuildOptions {
  std::optional<Delta> delta_max;
  /// Called after each delta with (delta, last delta to process); returning
  /// false cancels the build.
  std::function<bool(Delta, Delta)> progress;
};

struct BuildStats {
  Delta deltas_processed = 0;
  Delta saturation_delta = 0;
  bool saturated = false;
};

class BuildCancelled : public Error {
 public:
  BuildCancelled() : Error("index build cancelled") {}
};

/// Bottom-up index construction: for each delta, one incremental counting
/// step followed by a full peel on the resulting supports. Stops at the
/// saturation delta, after which nothing changes.
inline TTIndex build_index(const TemporalGraph& g, const BuildOptions& opt = {}, BuildStats* stats = nullptr) {
  TTIndex idx;
  idx.graph_fingerprint = fingerprint(g);
  idx.t_max = g.t_max();
  idx.edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) idx.edges.push_back({e.u, e.v, {}});

  SliceCounters state(g);
  const Delta sat = state.saturation_delta();
  const Delta last = opt.delta_max ? std::min(*opt.delta_max, sat) : sat;
  std::vector<LocalTriangle> weighted;
  for (Delta d = 0;; ++d) {
    count_all_tsup_step(g, d, state);
    weighted.clear();
    auto tris = state.triangles();
    auto counts = state.triangle_counts();
    for (std::size_t i = 0; i < tris.size(); ++i)
      if (counts[i] > 0) weighted.push_back({tris[i].key, {tris[i].ab, tris[i].ac, tris[i].bc}, counts[i]});
    auto p = peel(g.edge_count(), weighted);
    for (EdgeId e = 0; e < g.edge_count(); ++e) idx.edges[e].skyline.add(d, p.trussness[e]);
    if (opt.progress && !opt.progress(d, last)) throw BuildCancelled();
    if (d == last) break;
  }
  idx.coverage = last;
  idx.saturated = last == sat;
  auto tris = state.triangles();
  auto act = state.activations();
  for (std::size_t i = 0; i < tris.size(); ++i)
    if (act[i] != SliceCounters::kInactive) idx.triangles.push_back({tris[i].key, act[i]});
  if (stats) *stats = {last + 1, sat, idx.saturated};
  return idx;
}

// ---------------------------------------------------------------------------
// On-disk format, little-endian throughout:
//
//   "TTIX" | version u32 | fingerprint u64 | t_max u32 | coverage u32 |
//   flags u32 (bit 0: saturated) | edge count u64 | triangle count u64
//   per edge:     u u32 | v u32 | n u32 | n x (delta u32, tau u64)
//   per triangle: a u32 | b u32 | c u32 | activation u32
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kIndexVersion = 1;

class IndexError : public Error {
 public:
  enum class Kind { io, bad_magic, version_mismatch, truncated, fingerprint_mismatch, corrupt };
  IndexError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

class Writer {
 public:
  template <typename T>
  void put(T x) {
    for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(static_cast<char>((std::uint64_t(x) >> (8 * i)) & 0xff));
  }
  void raw(const char* s, std::size_t n) { buf_.append(s, n); }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) x |= std::uint64_t(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(x);
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw IndexError(IndexError::Kind::truncated, "index file truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string serialize_index(const TTIndex& idx) {
  detail::Writer w;
  w.raw("TTIX", 4);
  w.put<std::uint32_t>(kIndexVersion);
  w.put<std::uint64_t>(idx.graph_fingerprint);
  w.put<std::uint32_t>(idx.t_max);
  w.put<std::uint32_t>(idx.coverage);
  w.put<std::uint32_t>(idx.saturated ? 1u : 0u);
  w.put<std::uint64_t>(idx.edges.size());
  w.put<std::uint64_t>(idx.triangles.size());
  for (const auto& e : idx.edges) {
    w.put<std::uint32_t>(e.u);
    w.put<std::uint32_t>(e.v);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(e.skyline.size()));
    for (const auto& p : e.skyline.points()) {
      w.put<std::uint32_t>(p.delta);
      w.put<std::uint64_t>(p.tau);
    }
  }
  for (const auto& t : idx.triangles) {
    w.put<std::uint32_t>(t.key.a);
    w.put<std::uint32_t>(t.key.b);
    w.put<std::uint32_t>(t.key.c);
    w.put<std::uint32_t>(t.activation);
  }
  return w.bytes();
}

inline TTIndex deserialize_index(std::string_view bytes) {
  detail::Reader r(bytes);
  if (bytes.size() < 4 || bytes.substr(0, 4) != "TTIX") throw IndexError(IndexError::Kind::bad_magic, "not an index file");
  r.raw(4);
  auto version = r.get<std::uint32_t>();
  if (version != kIndexVersion)
    throw IndexError(IndexError::Kind::version_mismatch,
                     "index version " + std::to_string(version) + ", expected " + std::to_string(kIndexVersion));
  TTIndex idx;
  idx.graph_fingerprint = r.get<std::uint64_t>();
  idx.t_max = r.get<std::uint32_t>();
  idx.coverage = r.get<std::uint32_t>();
  idx.saturated = (r.get<std::uint32_t>() & 1u) != 0;
  auto ne = r.get<std::uint64_t>();
  auto nt = r.get<std::uint64_t>();
  // each edge record is at least 12 bytes, each triangle record 16
  if (ne > r.remaining() / 12 || nt > r.remaining() / 16) throw IndexError(IndexError::Kind::truncated, "index file truncated");
  idx.edges.reserve(ne);
  for (std::uint64_t i = 0; i < ne; ++i) {
    EdgeSkyline e;
    e.u = r.get<std::uint32_t>();
    e.v = r.get<std::uint32_t>();
    auto n = r.get<std::uint32_t>();
    std::vector<SkylinePoint> pts;
    pts.reserve(std::min<std::size_t>(n, r.remaining() / 12));
    for (std::uint32_t j = 0; j < n; ++j) {
      SkylinePoint p;
      p.delta = r.get<std::uint32_t>();
      p.tau = r.get<std::uint64_t>();
      if (!pts.empty() && (p.delta <= pts.back().delta || p.tau <= pts.back().tau))
        throw IndexError(IndexError::Kind::corrupt, "skyline not strictly increasing");
      pts.push_back(p);
    }
    e.skyline = SkylineList(std::move(pts));
    idx.edges.push_back(std::move(e));
  }
  idx.triangles.reserve(nt);
  for (std::uint64_t i = 0; i < nt; ++i) {
    TriangleActivation t;
    t.key.a = r.get<std::uint32_t>();
    t.key.b = r.get<std::uint32_t>();
    t.key.c = r.get<std::uint32_t>();
    t.activation = r.get<std::uint32_t>();
    idx.triangles.push_back(t);
  }
  if (r.remaining() != 0) throw IndexError(IndexError::Kind::corrupt, "trailing bytes after index");
  return idx;
}

/// Writes through a temporary file so a failed write never leaves a partial index.
inline void save_index(const TTIndex& idx, const std::string& path) {
  auto bytes = serialize_index(idx);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IndexError(IndexError::Kind::io, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IndexError(IndexError::Kind::io, "write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IndexError(IndexError::Kind::io, "cannot move index into place: " + path);
  }
}

inline TTIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError(IndexError::Kind::io, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_index(bytes);
}

inline void check_fingerprint(const TTIndex& idx, const TemporalGraph& g) {
  if (idx.graph_fingerprint != fingerprint(g) || idx.edges.size() != g.edge_count())
    throw IndexError(IndexError::Kind::fingerprint_mismatch, "index was built from a different graph");
}

/// Loads an index and checks that it was built from `g`.
inline TTIndex load_index(const std::string& path, const TemporalGraph& g) {
  auto idx = load_index(path);
  check_fingerprint(idx, g);
  return idx;
}

}  // namespace tcs

#endif  // TCS_TTINDEX_HPP
