#ifndef TCS_VERIFY_HPP
#define TCS_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tcs/gen.hpp"
#include "tcs/graph.hpp"
#include "tcs/localsearch.hpp"
#include "tcs/truss.hpp"
#include "tcs/ttindex.hpp"
#include "tcs/ttsquery.hpp"

namespace tcs {

struct Instance {
  std::uint64_t seed = 0;
  TemporalGraph graph;
  VertexId q = 0;
  Delta delta = 0;
};

/// Small random (graph, q, delta) drawn from `seed`; about half carry a
/// planted community so non-trivial answers are common.
inline Instance random_instance(std::uint64_t seed) {
  Rng rng(seed ^ 0x5eed5eed5eedull);
  GenSpec spec;
  spec.seed = rng.next();
  spec.n = static_cast<std::uint32_t>(rng.between(5, 18));
  const std::uint64_t pairs = std::uint64_t(spec.n) * (spec.n - 1) / 2;
  spec.m_static = rng.between(spec.n, std::min<std::uint64_t>(pairs, 3ull * spec.n));
  spec.t_max = static_cast<Timestamp>(rng.between(2, 14));
  spec.max_timestamps = static_cast<std::uint32_t>(rng.between(1, 4));
  if (rng.between(0, 1)) {
    PlantedSpec p;
    p.size = static_cast<std::uint32_t>(rng.between(3, std::min<std::uint64_t>(6, spec.n)));
    p.sigma = static_cast<Delta>(rng.between(0, 3));
    p.timestamps_per_edge = static_cast<std::uint32_t>(rng.between(1, 3));
    spec.planted = p;
  }
  Instance inst;
  inst.seed = seed;
  inst.graph = generate(spec);
  std::vector<VertexId> active;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (inst.graph.degree(v) > 0) active.push_back(v);
  inst.q = active.empty() ? 0 : active[rng.between(0, active.size() - 1)];
  inst.delta = static_cast<Delta>(rng.between(0, inst.graph.t_max()));
  return inst;
}

using SearchFn = std::function<CommunityResult(const TemporalGraph&, VertexId, Delta, Connectivity)>;
using IndexedSearchFn =
    std::function<CommunityResult(const TemporalGraph&, const TTIndex&, VertexId, Delta, Connectivity)>;

/// The engines under comparison; tests swap one for a deliberately wrong double.
struct Engines {
  SearchFn gs = [](const TemporalGraph& g, VertexId q, Delta d, Connectivity m) { return gs_search(g, q, d, m); };
  SearchFn ls = [](const TemporalGraph& g, VertexId q, Delta d, Connectivity m) {
    LocalSearchOptions opt;
    opt.mode = m;
    return ls_search(g, q, d, opt);
  };
  IndexedSearchFn tts = [](const TemporalGraph& g, const TTIndex& idx, VertexId q, Delta d, Connectivity m) {
    return tts_query(g, idx, q, d, m);
  };
};

struct Divergence {
  std::uint64_t seed = 0;
  Connectivity mode = Connectivity::paper;
  std::string detail;
};

struct VerifyReport {
  std::size_t instances = 0;
  std::optional<Divergence> first_failure;  // smallest failing seed
  bool passed() const { return !first_failure; }
};

inline std::string describe(const CommunityResult& r) {
  std::ostringstream os;
  os << "k*=" << r.k_star << " components=" << r.components.size() << " [";
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    if (i) os << " | ";
    for (std::size_t j = 0; j < r.components[i].size(); ++j) os << (j ? "," : "") << r.components[i][j];
  }
  os << "]";
  return os.str();
}

/// Checks one instance in both connectivity modes; returns the first mismatch.
inline std::optional<Divergence> check_instance(const Instance& inst, const Engines& engines) {
  if (inst.graph.vertex_count() == 0) return std::nullopt;
  auto idx = build_index(inst.graph);
  for (auto mode : {Connectivity::paper, Connectivity::strict_edge}) {
    auto gs = engines.gs(inst.graph, inst.q, inst.delta, mode);
    auto ls = engines.ls(inst.graph, inst.q, inst.delta, mode);
    auto tts = engines.tts(inst.graph, idx, inst.q, inst.delta, mode);
    if (gs == ls && gs == tts) continue;
    std::ostringstream os;
    os << "q=" << inst.q << " delta=" << inst.delta << " mode=" << to_string(mode) << "\n  gs:  " << describe(gs)
       << "\n  ls:  " << describe(ls) << "\n  tts: " << describe(tts);
    return Divergence{inst.seed, mode, os.str()};
  }
  return std::nullopt;
}

/// Runs seeds first_seed .. first_seed + count - 1 through all engines.
inline VerifyReport verify_engines(std::size_t count, std::uint64_t first_seed = 1, unsigned threads = 1,
                                   const Engines& engines = {}) {
  VerifyReport report;
  report.instances = count;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      auto inst = random_instance(first_seed + i);
      std::optional<Divergence> d;
      try {
        d = check_instance(inst, engines);
      } catch (const std::exception& e) {
        d = Divergence{inst.seed, Connectivity::paper, std::string("exception: ") + e.what()};
      }
      if (!d) continue;
      std::lock_guard lock(mu);
      if (!report.first_failure || d->seed < report.first_failure->seed) report.first_failure = std::move(d);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return report;
}

}  // namespace tcs

#endif  // TCS_VERIFY_HPP
