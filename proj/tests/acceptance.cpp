// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tcs/tcs.hpp"

using namespace tcs;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void expect(bool cond, const std::string& msg) {
    if (!cond && ok) ok = false, why = msg;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(s < limit_s, "over time limit");
  std::printf("criterion %2d %-4s %-34s %8.2fs (limit %.0fs)%s%s\n", id, c.ok ? "PASS" : "FAIL", name, s, limit_s,
              c.ok ? "" : "  ", c.why.c_str());
  std::fflush(stdout);
  failures += !c.ok;
}

std::vector<Timestamp> random_list(std::mt19937_64& rng) {
  std::set<Timestamp> s;
  std::size_t len = rng() % 13;
  while (s.size() < len) s.insert(1 + rng() % 40);
  return {s.begin(), s.end()};
}

std::string at(const char* what, int rep) { return std::string(what) + " mismatch at instance " + std::to_string(rep); }

}  // namespace

int main() {
  criterion(1, "counting oracle", 5, [](Check& c) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000 && c.ok; ++i) {
      auto a = random_list(rng), b = random_list(rng), d = random_list(rng);
      Delta delta = rng() % 41;
      c.expect(count_triangle_sliding(a, b, d, delta) == oracle::count_triples(a, b, d, delta), at("count", i));
    }
  });

  criterion(2, "support oracle", 60, [](Check& c) {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 5 + rng() % 26, 20 + rng() % 281, 2 + rng() % 20);
      auto lists = oracle::lists_of(g);
      for (Delta d = 0; d <= g.t_max(); ++d) {
        auto got = temporal_support_all(g, d);
        auto expect = oracle::supports(lists, d);
        for (EdgeId e = 0; e < g.edge_count(); ++e)
          c.expect(got.support[e] == expect.at({g.edge(e).u, g.edge(e).v}), at("support", rep));
      }
    }
  });

  criterion(3, "incremental counting", 120, [](Check& c) {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 30 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 20, 250, 25);
      SliceCounters st(g);
      for (Delta d = 0; d + 1 <= g.t_max(); ++d) {
        count_all_tsup_step(g, d, st);
        auto ref = temporal_support_all(g, d);
        for (std::size_t i = 0; i < ref.triangles.size(); ++i)
          c.expect(st.triangle_counts()[i] == ref.triangles[i].count, at("N", rep));
        for (EdgeId e = 0; e < g.edge_count(); ++e) c.expect(st.supports()[e] == ref.support[e], at("TSup", rep));
      }
    }
  });

  criterion(4, "index vs decompose", 120, [](Check& c) {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 30 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 20, 250, 20);
      auto idx = build_index(g);
      for (Delta d = 0; d <= g.t_max(); ++d) {
        auto dec = decompose(g, d);
        for (EdgeId e = 0; e < g.edge_count(); ++e)
          c.expect(find_index(idx, e, d).tau == dec.trussness[e], at("trussness", rep));
      }
    }
  });

  criterion(5, "cross-engine agreement", 180, [](Check& c) {
    auto rep = verify_engines(200, 1, std::max(1u, std::thread::hardware_concurrency()));
    if (!rep.passed())
      c.expect(false, "seed " + std::to_string(rep.first_failure->seed) + " (" +
                          std::string(to_string(rep.first_failure->mode)) + ")");
  });

  criterion(6, "exhaustive trussness, n<=8", 120, [](Check& c) {
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 60 && c.ok; ++rep) {
      std::uint32_t n = 4 + rng() % 5;
      std::size_t m = std::min<std::size_t>(n * (n - 1) / 2, 5 + rng() % 9);
      auto g = oracle::random_dense_graph(rng, n, m, 3, 6);
      auto lists = oracle::lists_of(g);
      Delta d = rng() % 6;
      auto got = decompose(g, d);
      auto expect = oracle::trussness(lists, d);
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        c.expect(got.trussness[e] == expect.at({g.edge(e).u, g.edge(e).v}), at("trussness", rep));
    }
  });

  criterion(7, "monotonicity suite", 60, [](Check& c) {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 14, 160, 10);
      std::vector<VertexId> s;
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (rng() % 3) s.push_back(v);
      auto h = induced_subgraph(g, s);
      Delta d = rng() % 6;
      auto sg = temporal_support_all(g, d), sh = temporal_support_all(h, d);
      for (EdgeId e = 0; e < h.edge_count(); ++e)
        c.expect(sh.support[e] <= sg.support[g.edge_id(h.edge(e).u, h.edge(e).v)], at("subgraph support", rep));
    }
    for (std::uint64_t seed = 1; seed <= 100 && c.ok; ++seed) {
      auto inst = random_instance(seed);
      LocalSearchTrace trace;
      LocalSearchOptions opt;
      opt.trace = &trace;
      ls_search(inst.graph, inst.q, inst.delta, opt);
      for (std::size_t i = 1; i < trace.thresholds.size(); ++i)
        c.expect(trace.thresholds[i] < trace.thresholds[i - 1], at("threshold order", int(seed)));
    }
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 14, 160, 8);
      VertexId q = rng() % g.vertex_count();
      Delta d = rng() % 5;
      Count k1 = rng() % 6, k2 = k1 + rng() % 6;
      for (auto mode : {Connectivity::strict_edge, Connectivity::paper}) {
        auto a = expanding(g, d, q, k1, mode).batch, b = expanding(g, d, q, k2, mode).batch;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        c.expect(std::includes(a.begin(), a.end(), b.begin(), b.end()), at("expansion nesting", rep));
      }
    }
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 12, 120, 12);
      auto idx = build_index(g);
      for (const auto& e : idx.edges) {
        auto p = e.skyline.points();
        for (std::size_t i = 1; i < p.size(); ++i)
          c.expect(p[i].tau > p[i - 1].tau && p[i].delta > p[i - 1].delta, at("skyline order", rep));
      }
    }
  });

  criterion(8, "metrics oracle", 30, [](Check& c) {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 50 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 16, 200, 12);
      std::vector<VertexId> s, rest;
      for (VertexId v = 0; v < g.vertex_count(); ++v) (rng() % 2 ? s : rest).push_back(v);
      Delta d = rng() % 5;
      auto lists = oracle::lists_of(g);
      TriangleCounts expect;
      std::set<VertexId> in(s.begin(), s.end());
      for (const auto& t : oracle::triangles(lists)) {
        Count n = oracle::triangle_count(lists, t, d);
        int k = int(in.count(t[0]) + in.count(t[1]) + in.count(t[2]));
        if (k == 3) expect.inside += n;
        if (k == 1 || k == 2) expect.cut += n;
        if (k >= 1) expect.vol_s += n;
        if (k <= 2) expect.vol_rest += n;
      }
      auto got = classify_triangles(g, s, d);
      c.expect(got == expect, at("classification", rep));
      double a = htc(g, s, d), b = htc(g, rest, d);
      c.expect(a == b, at("htc symmetry", rep));
      c.expect(a >= 0 && a <= 1, at("htc bounds", rep));
      if (s.size() >= 3 && expect.inside > 0) {
        std::set<Timestamp> times;
        for (const auto& [p, ts] : lists)
          if (in.count(p.first) && in.count(p.second)) times.insert(ts.begin(), ts.end());
        double sz = double(s.size()), span = double(times.size());
        double want = std::cbrt(double(expect.inside) / (sz * (sz - 1) * (sz - 2) * span * span * span));
        c.expect(std::abs(htd(g, s, d) - want) <= 1e-12 * want, at("htd", rep));
      }
    }
  });

  criterion(9, "performance ordering tts<ls<gs", 600, [](Check& c) {
    GenSpec spec{.n = 2000, .m_static = 20000, .t_max = 30, .seed = 9, .max_timestamps = 3};
    spec.planted = PlantedSpec{.count = 200, .size = 8, .sigma = 3, .timestamps_per_edge = 3, .external_degree = 2};
    auto g = generate(spec);
    c.expect(g.temporal_edge_count() >= 50000, "graph too small");
    auto idx = build_index(g);
    auto samples = sample_queries(degree_buckets(g, 5), 100, 9);
    const Delta delta = 5;
    int nonempty = 0;
    for (const auto& x : samples) nonempty += !tts_query(g, idx, x.q, delta).empty();
    auto med = [&](const std::function<void(VertexId)>& fn) {
      return median(time_engine("", samples, 3, fn).per_query_ms);
    };
    double t = med([&](VertexId q) { (void)tts_query(g, idx, q, delta); });
    double l = med([&](VertexId q) { (void)ls_search(g, q, delta); });
    double s = med([&](VertexId q) { (void)gs_search(g, q, delta); });
    std::ostringstream os;
    os << "medians tts=" << t << "ms ls=" << l << "ms gs=" << s << "ms over " << g.temporal_edge_count()
       << " temporal edges, " << nonempty << "/" << samples.size() << " queries non-empty";
    std::printf("             %s\n", os.str().c_str());
    c.expect(t < l && l < s, os.str());
  });

  criterion(10, "index round-trip", 10, [](Check& c) {
    std::mt19937_64 rng(10);
    auto path = (std::filesystem::temp_directory_path() / "tcs_acceptance.ttix").string();
    for (int rep = 0; rep < 20 && c.ok; ++rep) {
      auto g = oracle::random_graph(rng, 20, 250, 15);
      auto idx = build_index(g);
      save_index(idx, path);
      c.expect(load_index(path, g) == idx, at("round-trip", rep));
      auto other = oracle::random_graph(rng, 20, 250, 15);
      bool rejected = false;
      try {
        load_index(path, other);
      } catch (const IndexError& e) {
        rejected = e.kind() == IndexError::Kind::fingerprint_mismatch;
      }
      c.expect(rejected, at("fingerprint rejection", rep));
    }
    std::filesystem::remove(path);
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
