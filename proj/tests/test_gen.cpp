#include <gtest/gtest.h>

#include "tcs/bench.hpp"
#include "tcs/gen.hpp"
#include "tcs/ttsquery.hpp"

using namespace tcs;

TEST(Generate, NoEdges) {
  auto g = generate({.n = 10, .m_static = 0, .t_max = 5, .seed = 1});
  EXPECT_EQ(g.vertex_count(), 10u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Generate, DeterministicPerSeed) {
  GenSpec spec{.n = 200, .m_static = 800, .t_max = 50, .seed = 9, .max_timestamps = 4};
  EXPECT_EQ(generate(spec), generate(spec));
  auto other = spec;
  other.seed = 10;
  EXPECT_NE(generate(spec), generate(other));
}

TEST(Generate, SizesAndRanges) {
  for (std::uint64_t m : {100ull, 1000ull, 1225ull}) {
    GenSpec spec{.n = 50, .m_static = m, .t_max = 30, .seed = 3, .max_timestamps = 3};
    auto g = generate(spec);
    EXPECT_EQ(g.edge_count(), m);
    for (const auto& e : g.edges()) {
      EXPECT_GE(e.timestamps.size(), 1u);
      EXPECT_LE(e.timestamps.size(), 3u);
      EXPECT_GE(e.timestamps.front(), 1u);
      EXPECT_LE(e.timestamps.back(), 30u);
    }
  }
}

TEST(Generate, RejectsImpossibleSpecs) {
  EXPECT_THROW(generate({.n = 5, .m_static = 11, .t_max = 5}), InvalidArgument);
  EXPECT_THROW(generate({.n = 5, .m_static = 2, .t_max = 0}), InvalidArgument);
  GenSpec big{.n = 5, .m_static = 2, .t_max = 5};
  big.planted = PlantedSpec{.count = 2, .size = 3};
  EXPECT_THROW(generate(big), InvalidArgument);
}

TEST(Generate, RngBetweenIsInclusiveAndUnbiasedEnough) {
  Rng rng(4);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 50000; ++i) ++hits[rng.between(10, 14) - 10];
  for (int h : hits) EXPECT_NEAR(h, 10000, 600);
}

TEST(Generate, PlantedCliqueIsRecovered) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec spec{.n = 400, .m_static = 800, .t_max = 200, .seed = seed, .max_timestamps = 2};
    spec.planted = PlantedSpec{.count = 1, .size = 6, .sigma = 2, .timestamps_per_edge = 3};
    auto gen = generate_with_truth(spec);
    ASSERT_EQ(gen.communities.size(), 1u);
    const auto& planted = gen.communities[0];
    ASSERT_EQ(planted.size(), 6u);
    // a background edge landing inside the clique breaks the sparsity assumption
    bool clean = true;
    for (std::size_t i = 0; i < planted.size(); ++i)
      for (std::size_t j = i + 1; j < planted.size(); ++j) {
        auto e = gen.graph.find_edge(planted[i], planted[j]);
        ASSERT_TRUE(e.has_value());
        auto ts = gen.graph.timestamps(*e);
        clean &= ts.back() - ts.front() <= 2u;
      }
    if (!clean) continue;
    ++checked;
    auto idx = build_index(gen.graph);
    auto r = tts_query(gen.graph, idx, planted[0], 4);
    auto found = r.vertices(gen.graph);
    std::size_t hit = 0;
    for (auto v : planted) hit += std::binary_search(found.begin(), found.end(), v);
    EXPECT_GE(hit, 5u) << "seed " << seed;
  }
  EXPECT_GE(checked, 10);
}

TEST(Downsample, FullFractionIsIdentity) {
  auto g = generate({.n = 60, .m_static = 200, .t_max = 20, .seed = 5, .max_timestamps = 2});
  EXPECT_EQ(downsample_vertices(g, 1.0, 1), g);
}

TEST(Downsample, IsAnInducedSubgraph) {
  auto g = generate({.n = 60, .m_static = 300, .t_max = 20, .seed = 6, .max_timestamps = 2});
  auto h = downsample_vertices(g, 0.5, 2);
  std::vector<char> kept(g.vertex_count(), 0);
  for (const auto& e : h.edges()) kept[e.u] = kept[e.v] = 1;
  for (const auto& e : g.edges())
    if (kept[e.u] && kept[e.v]) {
      auto he = h.find_edge(e.u, e.v);
      ASSERT_TRUE(he.has_value());
      EXPECT_EQ(h.edge(*he).timestamps, e.timestamps);
    }
  EXPECT_LT(h.edge_count(), g.edge_count());
  EXPECT_THROW(downsample_vertices(g, 0.0, 1), InvalidArgument);
  EXPECT_THROW(downsample_vertices(g, 1.5, 1), InvalidArgument);
}

TEST(Buckets, SizesDifferByAtMostOne) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = generate({.n = 97 + std::uint32_t(seed), .m_static = 300, .t_max = 20, .seed = seed, .max_timestamps = 3});
    auto b = degree_buckets(g, 5);
    ASSERT_EQ(b.size(), 5u);
    std::size_t lo = b[0].size(), hi = b[0].size(), total = 0;
    for (const auto& x : b) lo = std::min(lo, x.size()), hi = std::max(hi, x.size()), total += x.size();
    EXPECT_LE(hi - lo, 1u);
    std::size_t active = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) active += g.degree(v) > 0;
    EXPECT_EQ(total, active);
    for (std::size_t i = 1; i < b.size(); ++i)
      if (!b[i - 1].empty() && !b[i].empty()) {
        EXPECT_LE(g.temporal_degree(b[i - 1].back()), g.temporal_degree(b[i].front()));
      }
  }
}

TEST(Buckets, SamplingSpreadsQueries) {
  auto g = generate({.n = 300, .m_static = 900, .t_max = 20, .seed = 2, .max_timestamps = 3});
  auto b = degree_buckets(g, 5);
  auto s = sample_queries(b, 100, 7);
  ASSERT_EQ(s.size(), 100u);
  std::vector<int> per(5, 0);
  for (const auto& x : s) ++per[x.bucket];
  for (int c : per) EXPECT_EQ(c, 20);
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_EQ(percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 90), 9.0);
}
