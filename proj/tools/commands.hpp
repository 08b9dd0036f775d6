#ifndef TCS_TOOLS_COMMANDS_HPP
#define TCS_TOOLS_COMMANDS_HPP

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcs/tcs.hpp"

namespace tcs::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kVerifyFailed = 3 };

enum class Format { text, jsonl };

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string index;
  std::string output;
  std::optional<std::int64_t> query_node;  // label as written in the input file
  std::string delta;                       // integer or "auto"
  std::string engine = "gs";
  Connectivity mode = Connectivity::paper;
  Format format = Format::text;
  std::uint64_t seed = 1;
  unsigned reps = 1;
  std::int64_t time_scale = 1;
  bool rebase = true;

  std::optional<Delta> delta_max;    // build-index
  std::size_t instances = 200;       // verify
  std::size_t queries = 100;         // bench
  std::vector<std::string> engines;  // bench
  std::vector<std::int64_t> vertex_set;  // metrics
  std::string delta_star = "auto";       // metrics
  TimeExtent extent = TimeExtent::distinct;

  GenSpec gen;  // generate
};

inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TEMPORAL_TRUSS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

inline TemporalGraph load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  if (cfg.time_scale < 1) throw UsageError("--time-scale must be positive");
  return load_graph(cfg.input, {cfg.time_scale, cfg.rebase});
}

inline Delta resolve_delta(const std::string& text, const TemporalGraph& g, const char* flag = "--delta") {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  if (text == "auto") return estimate_delta_star(g);
  auto v = detail::parse_int(text);
  if (!v || *v < 0 || *v > std::numeric_limits<Delta>::max())
    throw UsageError(std::string(flag) + " must be a non-negative integer or 'auto'");
  return static_cast<Delta>(*v);
}

inline VertexId resolve_vertex(const TemporalGraph& g, std::int64_t label) {
  auto v = g.vertex_of_label(label);
  if (!v) throw InvalidArgument("vertex " + std::to_string(label) + " does not occur in the graph");
  return *v;
}

inline void emit(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump() << '\n'; }

// ---------------------------------------------------------------------------

inline int cmd_ingest(const RunConfig& cfg, std::ostream& out) {
  auto g = load_input(cfg);
  if (cfg.format == Format::jsonl) {
    emit(out, {{"command", "ingest"},
               {"vertices", g.vertex_count()},
               {"static_edges", g.edge_count()},
               {"temporal_edges", g.temporal_edge_count()},
               {"t_max", g.t_max()}});
  } else {
    out << "vertices\tstatic_edges\ttemporal_edges\tt_max\n"
        << g.vertex_count() << '\t' << g.edge_count() << '\t' << g.temporal_edge_count() << '\t' << g.t_max() << '\n';
  }
  return kOk;
}

inline int cmd_build_index(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.index.empty()) throw UsageError("--index is required");
  auto g = load_input(cfg);
  BuildOptions opt;
  opt.delta_max = cfg.delta_max;
  BuildStats stats;
  auto t0 = std::chrono::steady_clock::now();
  auto idx = build_index(g, opt, &stats);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  save_index(idx, cfg.index);

  std::size_t pairs = 0;
  for (const auto& e : idx.edges) pairs += e.skyline.size();
  const std::size_t edge_bytes = idx.edges.size() * 12 + pairs * 12;
  const std::size_t tri_bytes = idx.triangles.size() * 16;
  const auto file_bytes = std::filesystem::file_size(cfg.index);
  const bool early = idx.saturated && std::uint64_t(stats.saturation_delta) + 1 < g.t_max();
  if (early)
    err << "saturated at delta=" << stats.saturation_delta << " (t_max=" << g.t_max()
        << "); larger deltas share its answers\n";
  if (cfg.format == Format::jsonl) {
    emit(out, {{"command", "build-index"},
               {"index", cfg.index},
               {"seconds", seconds},
               {"file_bytes", file_bytes},
               {"edge_records", idx.edges.size()},
               {"skyline_pairs", pairs},
               {"edge_bytes", edge_bytes},
               {"triangle_records", idx.triangles.size()},
               {"triangle_bytes", tri_bytes},
               {"coverage", idx.coverage},
               {"saturated", idx.saturated},
               {"saturation_delta", stats.saturation_delta}});
  } else {
    out << "index\t" << cfg.index << '\n'
        << "build_seconds\t" << std::fixed << std::setprecision(3) << seconds << std::defaultfloat << '\n'
        << "file_bytes\t" << file_bytes << '\n'
        << "edge_records\t" << idx.edges.size() << '\n'
        << "skyline_pairs\t" << pairs << '\n'
        << "edge_bytes\t" << edge_bytes << '\n'
        << "triangle_records\t" << idx.triangles.size() << '\n'
        << "triangle_bytes\t" << tri_bytes << '\n'
        << "coverage\t" << idx.coverage << (idx.saturated ? " (saturated)" : "") << '\n';
  }
  return kOk;
}

inline CommunityResult run_engine(const RunConfig& cfg, const TemporalGraph& g, VertexId q, Delta delta,
                                  const TTIndex* idx) {
  if (cfg.engine == "gs") return gs_search(g, q, delta, cfg.mode);
  if (cfg.engine == "ls") {
    LocalSearchOptions opt;
    opt.mode = cfg.mode;
    return ls_search(g, q, delta, opt);
  }
  if (cfg.engine == "tts") {
    if (!idx) throw UsageError("engine tts requires --index");
    return tts_query(g, *idx, q, delta, cfg.mode);
  }
  throw UsageError("unknown engine '" + cfg.engine + "'");
}

inline std::optional<TTIndex> maybe_index(const RunConfig& cfg, const TemporalGraph& g) {
  if (cfg.engine == "tts" && cfg.index.empty()) throw UsageError("engine tts requires --index");
  if (cfg.engine != "tts") return std::nullopt;
  return load_index(cfg.index, g);
}

inline int cmd_query(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.query_node) throw UsageError("--query-node is required");
  if (cfg.engine != "gs" && cfg.engine != "ls" && cfg.engine != "tts")
    throw UsageError("unknown engine '" + cfg.engine + "'");
  auto g = load_input(cfg);
  auto idx = maybe_index(cfg, g);
  const Delta delta = resolve_delta(cfg.delta, g);
  const VertexId q = resolve_vertex(g, *cfg.query_node);
  auto r = run_engine(cfg, g, q, delta, idx ? &*idx : nullptr);

  auto vertex_labels = [&](const std::vector<EdgeId>& comp) {
    std::vector<std::int64_t> vs;
    for (auto e : comp) vs.push_back(g.label(g.edge(e).u)), vs.push_back(g.label(g.edge(e).v));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  };
  auto edge_labels = [&](const std::vector<EdgeId>& comp) {
    std::vector<std::pair<std::int64_t, std::int64_t>> es;
    for (auto e : comp) {
      auto a = g.label(g.edge(e).u), b = g.label(g.edge(e).v);
      es.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(es.begin(), es.end());
    return es;
  };

  if (cfg.format == Format::jsonl) {
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& c : r.components) {
      nlohmann::ordered_json edges = nlohmann::ordered_json::array();
      for (auto [a, b] : edge_labels(c)) edges.push_back({a, b});
      comps.push_back({{"vertices", vertex_labels(c)}, {"edges", edges}});
    }
    emit(out, {{"command", "query"},
               {"engine", cfg.engine},
               {"mode", to_string(cfg.mode)},
               {"q", *cfg.query_node},
               {"delta", delta},
               {"k_star", r.k_star},
               {"components", comps}});
    return kOk;
  }
  out << "q=" << *cfg.query_node << " delta=" << delta << " mode=" << to_string(cfg.mode) << '\n'
      << "k*=" << r.k_star << '\n'
      << "components=" << r.components.size() << '\n';
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    out << "component " << i + 1 << " vertices:";
    for (auto v : vertex_labels(r.components[i])) out << ' ' << v;
    out << "\ncomponent " << i + 1 << " edges:";
    for (auto [a, b] : edge_labels(r.components[i])) out << ' ' << a << '-' << b;
    out << '\n';
  }
  return kOk;
}

inline int cmd_metrics(const RunConfig& cfg, std::ostream& out) {
  auto g = load_input(cfg);
  std::vector<VertexId> s;
  if (!cfg.vertex_set.empty()) {
    for (auto label : cfg.vertex_set) s.push_back(resolve_vertex(g, label));
  } else if (cfg.query_node) {
    auto idx = maybe_index(cfg, g);
    auto r = run_engine(cfg, g, resolve_vertex(g, *cfg.query_node), resolve_delta(cfg.delta, g), idx ? &*idx : nullptr);
    s = r.vertices(g);
  } else {
    throw UsageError("metrics needs --set or --query-node");
  }
  const Delta ds = resolve_delta(cfg.delta_star, g, "--delta-star");
  auto rep = evaluate(g, s, ds, cfg.extent);
  if (cfg.format == Format::jsonl) {
    emit(out, {{"command", "metrics"},
               {"size", s.size()},
               {"delta_star", rep.delta_star},
               {"htd", rep.htd},
               {"htc", rep.htc},
               {"inside", rep.triangles.inside},
               {"cut", rep.triangles.cut},
               {"vol_s", rep.triangles.vol_s},
               {"vol_rest", rep.triangles.vol_rest}});
  } else {
    out << "size\t" << s.size() << '\n'
        << "delta_star\t" << rep.delta_star << '\n'
        << "htd\t" << std::setprecision(6) << rep.htd << '\n'
        << "htc\t" << rep.htc << '\n'
        << "inside\t" << rep.triangles.inside << '\n'
        << "cut\t" << rep.triangles.cut << '\n'
        << "vol_s\t" << rep.triangles.vol_s << '\n'
        << "vol_rest\t" << rep.triangles.vol_rest << '\n';
  }
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, const Engines& engines = {}) {
  auto rep = verify_engines(cfg.instances, cfg.seed, thread_cap(), engines);
  if (cfg.format == Format::jsonl) {
    nlohmann::ordered_json j{{"command", "verify"}, {"instances", rep.instances}, {"passed", rep.passed()}};
    if (!rep.passed()) {
      j["seed"] = rep.first_failure->seed;
      j["detail"] = rep.first_failure->detail;
    }
    emit(out, j);
  } else if (rep.passed()) {
    out << "verify: " << rep.instances << " instances, all engines agree\n";
  } else {
    out << "verify: FAILED at seed " << rep.first_failure->seed << '\n' << rep.first_failure->detail << '\n';
  }
  return rep.passed() ? kOk : kVerifyFailed;
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto g = load_input(cfg);
  const Delta delta = resolve_delta(cfg.delta, g);
  std::vector<std::string> engines = cfg.engines.empty() ? std::vector<std::string>{"gs", "ls", "tts"} : cfg.engines;
  for (const auto& e : engines)
    if (e != "gs" && e != "ls" && e != "tts") throw UsageError("unknown engine '" + e + "'");

  std::optional<TTIndex> idx;
  if (std::find(engines.begin(), engines.end(), "tts") != engines.end()) {
    if (!cfg.index.empty()) {
      idx = load_index(cfg.index, g);
    } else {
      double ms = time_ms([&] { idx = build_index(g); });
      err << "built index in memory: " << std::fixed << std::setprecision(1) << ms << std::defaultfloat << " ms\n";
    }
  }
  auto buckets = degree_buckets(g, 5);
  auto samples = sample_queries(buckets, cfg.queries, cfg.seed);

  for (const auto& name : engines) {
    RunConfig c = cfg;
    c.engine = name;
    auto t = time_engine(name, samples, cfg.reps,
                         [&](VertexId q) { (void)run_engine(c, g, q, delta, idx ? &*idx : nullptr); });
    auto report = [&](const std::string& bucket, const std::vector<double>& xs) {
      if (cfg.format == Format::jsonl) {
        emit(out, {{"command", "bench"},
                   {"engine", name},
                   {"bucket", bucket},
                   {"queries", xs.size()},
                   {"median_ms", median(xs)},
                   {"p90_ms", percentile(xs, 90)},
                   {"max_ms", xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end())}});
      } else {
        out << name << '\t' << bucket << '\t' << xs.size() << '\t' << std::fixed << std::setprecision(3)
            << median(xs) << '\t' << percentile(xs, 90) << std::defaultfloat << '\n';
      }
    };
    if (cfg.format == Format::text && name == engines.front()) out << "engine\tbucket\tqueries\tmedian_ms\tp90_ms\n";
    report("all", t.per_query_ms);
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      std::vector<double> xs;
      for (std::size_t i = 0; i < samples.size(); ++i)
        if (samples[i].bucket == b) xs.push_back(t.per_query_ms[i]);
      report(std::to_string(b + 1), xs);
    }
  }
  return kOk;
}

inline void write_graph(const TemporalGraph& g, std::ostream& out) {
  for (const auto& e : g.edges())
    for (auto t : e.timestamps) out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << t << '\n';
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  auto gen = generate_with_truth(cfg.gen);
  if (cfg.output.empty()) {
    write_graph(gen.graph, out);
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw Error("cannot write " + cfg.output);
    write_graph(gen.graph, f);
    if (!f) throw Error("write failed: " + cfg.output);
  }
  std::ostream& log = cfg.output.empty() ? std::cerr : out;
  for (const auto& c : gen.communities) {
    log << "# planted:";
    for (auto v : c) log << ' ' << v;
    log << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

/// Parses argv into a RunConfig and dispatches. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truss-based temporal community search"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mode = "paper", format = "text", extent = "distinct";
  std::optional<std::int64_t> delta_max;
  std::optional<std::uint32_t> planted_size;
  PlantedSpec planted;

  auto common = [&](CLI::App* sub, bool input_required = true) {
    auto* opt = sub->add_option("--input", cfg.input, "temporal edge list, one 'u v t' per line");
    if (input_required) opt->required();
    sub->add_option("--time-scale", cfg.time_scale, "divide raw timestamps by this");
    sub->add_option("--rebase", cfg.rebase, "shift timestamps so the earliest is 1 (true/false)");
    sub->add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  };
  auto engine_flags = [&](CLI::App* sub) {
    sub->add_option("--engine", cfg.engine, "gs, ls or tts")->check(CLI::IsMember({"gs", "ls", "tts"}));
    sub->add_option("--mode", mode, "paper or strict-edge")->check(CLI::IsMember({"paper", "strict-edge"}));
    sub->add_option("--index", cfg.index, "index file (engine tts)");
  };

  auto* ingest = app.add_subcommand("ingest", "print graph statistics");
  common(ingest);

  auto* build = app.add_subcommand("build-index", "build and save the temporal-trussness index");
  common(build);
  build->add_option("--index", cfg.index, "output index file")->required();
  build->add_option("--delta-max", delta_max, "stop after this delta");

  auto* query = app.add_subcommand("query", "find the communities of a query vertex");
  common(query);
  engine_flags(query);
  query->add_option("--query-node", cfg.query_node, "query vertex, as labelled in the input")->required();
  query->add_option("--delta", cfg.delta, "time-span bound, or 'auto'")->required();

  auto* metrics = app.add_subcommand("metrics", "higher-order density and conductance of a vertex set");
  common(metrics);
  engine_flags(metrics);
  metrics->add_option("--set", cfg.vertex_set, "vertex labels")->delimiter(',');
  metrics->add_option("--query-node", cfg.query_node, "evaluate the community of this vertex instead");
  metrics->add_option("--delta", cfg.delta, "time-span bound for the community search, or 'auto'");
  metrics->add_option("--delta-star", cfg.delta_star, "span bound for the metrics, or 'auto'");
  metrics->add_option("--extent", extent, "|T_S| as 'distinct' timestamps or 'window' length")
      ->check(CLI::IsMember({"distinct", "window"}));

  auto* verify = app.add_subcommand("verify", "cross-check all engines on random instances");
  verify->add_option("--instances", cfg.instances, "number of seeded instances");
  verify->add_option("--seed", cfg.seed, "first seed");
  verify->add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));

  auto* bench = app.add_subcommand("bench", "time the engines on degree-bucketed queries");
  common(bench);
  bench->add_option("--index", cfg.index, "index file; built in memory when absent");
  bench->add_option("--delta", cfg.delta, "time-span bound, or 'auto'")->required();
  bench->add_option("--engines", cfg.engines, "subset of gs,ls,tts")->delimiter(',');
  bench->add_option("--mode", mode, "paper or strict-edge")->check(CLI::IsMember({"paper", "strict-edge"}));
  bench->add_option("--queries", cfg.queries, "query vertices sampled across five degree buckets");
  bench->add_option("--reps", cfg.reps, "repetitions per query");
  bench->add_option("--seed", cfg.seed, "sampling seed");

  auto* gen = app.add_subcommand("generate", "write a synthetic temporal edge list");
  gen->add_option("--n", cfg.gen.n, "vertices")->required();
  gen->add_option("--m", cfg.gen.m_static, "background static edges")->required();
  gen->add_option("--t-max", cfg.gen.t_max, "largest timestamp")->required();
  gen->add_option("--seed", cfg.gen.seed, "random seed");
  gen->add_option("--max-timestamps", cfg.gen.max_timestamps, "interactions per background edge, at most");
  gen->add_option("--planted-size", planted_size, "plant cliques of this size");
  gen->add_option("--planted-count", planted.count, "number of planted cliques");
  gen->add_option("--sigma", planted.sigma, "timestamp spread inside a planted clique");
  gen->add_option("--planted-timestamps", planted.timestamps_per_edge, "interactions per planted edge");
  gen->add_option("--external-degree", planted.external_degree, "edges from each planted vertex to the rest");
  gen->add_option("--output", cfg.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  cfg.mode = mode == "strict-edge" ? Connectivity::strict_edge : Connectivity::paper;
  cfg.format = format == "jsonl" ? Format::jsonl : Format::text;
  cfg.extent = extent == "window" ? TimeExtent::window : TimeExtent::distinct;
  if (planted_size) {
    planted.size = *planted_size;
    cfg.gen.planted = planted;
  }
  try {
    if (delta_max) {
      if (*delta_max < 0) throw UsageError("--delta-max must be non-negative");
      cfg.delta_max = static_cast<Delta>(*delta_max);
    }
    if (*ingest) return cmd_ingest(cfg, out);
    if (*build) return cmd_build_index(cfg, out, err);
    if (*query) return cmd_query(cfg, out);
    if (*metrics) return cmd_metrics(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*bench) return cmd_bench(cfg, out, err);
    if (*gen) return cmd_generate(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace tcs::cli

#endif  // TCS_TOOLS_COMMANDS_HPP
