#include "teamsim/bench.h"

#include <chrono>
#include <cstdio>
#include <random>

namespace teamsim {

UpdateSet gen_data_updates(const DataGraph& g0, const LabelTable& labels0, std::size_t units, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DataGraph g = g0;
  LabelTable labels = labels0;
  UpdateSet set;
  std::vector<NodeId> pool;
  for (NodeId v = 0; v < g.id_bound(); ++v)
    if (g.alive(v)) pool.push_back(v);
  auto random_alive = [&]() -> NodeId {
    for (int i = 0; i < 64 && !pool.empty(); ++i) {
      NodeId v = pool[rng() % pool.size()];
      if (g.alive(v)) return v;
    }
    for (NodeId v = 0; v < g.id_bound(); ++v)
      if (g.alive(v)) return v;
    return kNoNode;
  };
  std::size_t fresh = 0;
  while (set.data.size() < units) {
    if (g.num_nodes() < 2) break;
    DataUpdate u;
    unsigned dice = static_cast<unsigned>(rng() % 100);
    if (dice < 45) {
      // Edge insertion, mostly closing a triangle to keep locality.
      NodeId a = random_alive();
      NodeId b = kNoNode;
      const auto& na = g.neighbors(a);
      if (!na.empty() && rng() % 4 != 0) {
        NodeId mid = na[rng() % na.size()];
        const auto& nm = g.neighbors(mid);
        if (!nm.empty()) b = nm[rng() % nm.size()];
      }
      if (b == kNoNode) b = random_alive();
      if (a == b || g.has_edge(a, b)) continue;
      u.kind = UpdateKind::kDataEdgeIns;
      u.a = g.name(a);
      u.b = g.name(b);
    } else if (dice < 90) {
      NodeId a = random_alive();
      if (g.neighbors(a).empty()) continue;
      NodeId b = g.neighbors(a)[rng() % g.neighbors(a).size()];
      u.kind = UpdateKind::kDataEdgeDel;
      u.a = g.name(a);
      u.b = g.name(b);
    } else if (dice < 95) {
      NodeId anchor = random_alive();
      u.kind = UpdateKind::kDataNodeIns;
      do {
        u.a = "x" + std::to_string(seed % 100000) + "_" + std::to_string(fresh++);
      } while (g.find(u.a) != kNoNode);
      u.b = g.name(anchor);
      for (LabelId l : g.labels(anchor)) u.labels.push_back(labels.name(l));
    } else {
      NodeId w = random_alive();
      u.kind = UpdateKind::kDataNodeDel;
      u.a = g.name(w);
    }
    apply_data_update(g, u, labels);
    if (u.kind == UpdateKind::kDataNodeIns) pool.push_back(g.find(u.a));
    set.data.push_back(std::move(u));
  }
  return set;
}

namespace {

bool connected_without_edge(PatternGraph p, PNodeId a, PNodeId b) {
  p.remove_edge(a, b);
  return p.connected();
}

bool connected_without_node(PatternGraph p, PNodeId u) {
  p.remove_node(u);
  return p.connected();
}

}  // namespace

UpdateSet gen_pattern_updates(const PatternGraph& p0, const LabelTable& labels0, const std::vector<std::string>& pool,
                              std::size_t units, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PatternGraph p = p0;
  LabelTable labels = labels0;
  UpdateSet set;
  const Interval caps[] = {{1, 1}, {1, 2}, {1, Interval::kUnbounded}, {2, 3}, {1, 10}};
  std::size_t fresh = 0, guard = 0;
  while (set.pattern.size() < units && guard++ < 100 * units + 100) {
    auto nodes = p.nodes();
    PatternUpdate u;
    unsigned kind = static_cast<unsigned>(rng() % 5);
    if (kind == 0) {
      PNodeId a = nodes[rng() % nodes.size()], b = nodes[rng() % nodes.size()];
      if (a == b || p.has_edge(a, b)) continue;
      u.kind = UpdateKind::kPatEdgeIns;
      u.a = p.name(a);
      u.b = p.name(b);
    } else if (kind == 1) {
      auto edges = p.edges();
      if (edges.empty()) continue;
      auto [a, b] = edges[rng() % edges.size()];
      if (!connected_without_edge(p, a, b)) continue;
      u.kind = UpdateKind::kPatEdgeDel;
      u.a = p.name(a);
      u.b = p.name(b);
    } else if (kind == 2) {
      u.kind = UpdateKind::kPatNodeIns;
      do {
        u.a = "q" + std::to_string(fresh++);
      } while (p.find(u.a) != kNoNode);
      u.b = p.name(nodes[rng() % nodes.size()]);
      u.label = pool.empty() ? labels.name(p.label(nodes[0])) : pool[rng() % pool.size()];
      u.cap = caps[rng() % 5];
    } else if (kind == 3) {
      if (nodes.size() < 2) continue;
      PNodeId x = nodes[rng() % nodes.size()];
      if (!connected_without_node(p, x)) continue;
      u.kind = UpdateKind::kPatNodeDel;
      u.a = p.name(x);
    } else {
      u.kind = UpdateKind::kPatCap;
      u.a = p.name(nodes[rng() % nodes.size()]);
      u.cap = caps[rng() % 5];
    }
    apply_pattern_update(p, u, labels);
    set.pattern.push_back(std::move(u));
  }
  return set;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& cfg, const std::string& kind, const std::vector<double>& ratios,
                                const DataGraph* graph, const LabelTable* graph_labels, const PatternGraph* pattern) {
  LabelTable labels;
  DataGraph g;
  if (graph) {
    g = *graph;
    labels = *graph_labels;
  } else {
    g = gen_planted(cfg.gen, labels);
  }
  PatternGraph p = pattern ? *pattern
                           : gen_pattern_from(g, labels, labels, cfg.pattern_nodes, cfg.pattern_extra_edges, cfg.cap,
                                              cfg.seed);
  std::vector<std::string> label_pool;
  for (LabelId l : p.label_set()) label_pool.push_back(labels.name(l));
  label_pool.push_back(labels.name(0));

  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double ratio = ratios[i];
    const std::uint64_t seed = cfg.seed * 1000 + i;
    Session s(labels, g, p, cfg.session);
    std::vector<UpdateSet> sets;
    std::size_t gsize = g.num_nodes() + g.num_edges();
    std::size_t psize = p.num_nodes() + p.num_edges();
    auto data_units = [&](double r) { return std::max<std::size_t>(1, static_cast<std::size_t>(r * gsize + 0.5)); };
    auto pat_units = [&](double r) { return std::max<std::size_t>(1, static_cast<std::size_t>(r * psize + 0.5)); };
    if (kind == "data") {
      sets.push_back(gen_data_updates(g, labels, data_units(ratio), seed));
    } else if (kind == "pattern") {
      sets.push_back(gen_pattern_updates(p, labels, label_pool, pat_units(ratio), seed));
    } else if (kind == "both") {
      UpdateSet a = gen_pattern_updates(p, labels, label_pool, pat_units(ratio), seed);
      a.data = gen_data_updates(g, labels, data_units(ratio), seed + 1).data;
      sets.push_back(std::move(a));
    } else if (kind == "continuous") {
      // Ten small sets, each one tenth of the ratio, applied in sequence.
      DataGraph cur = g;
      LabelTable curl = labels;
      for (int step = 0; step < 10; ++step) {
        UpdateSet u = gen_data_updates(cur, curl, data_units(ratio / 10), seed + step);
        for (const auto& d : u.data) apply_data_update(cur, d, curl);
        sets.push_back(std::move(u));
      }
    } else {
      throw Error(ErrorKind::kInvalidUpdate, "unknown bench kind '" + kind + "'");
    }
    BenchRow row;
    row.kind = kind;
    row.ratio = ratio;
    QueryResult last;
    for (const auto& set : sets) {
      row.units += set.size();
      last = s.apply(set);
      row.inc_ms += last.stats.total_ms;
      row.affected += last.stats.balls_affected;
    }
    BatchOptions bo;
    bo.r = cfg.session.r;
    bo.k = cfg.session.k;
    bo.filter = cfg.session.filter;
    bo.threads = cfg.session.threads;
    auto t0 = std::chrono::steady_clock::now();
    BatchResult b = batch_run(s.pattern(), s.graph(), bo);
    row.batch_ms = elapsed_ms(t0);
    if (kind == "continuous") row.batch_ms *= static_cast<double>(sets.size());
    row.speedup = row.inc_ms > 0 ? row.batch_ms / row.inc_ms : 0;
    row.identical = b.satisfiable == last.satisfiable && b.topk.identical(last.topk);
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv_header() { return "kind,ratio,units,batch_ms,incremental_ms,speedup,affected_balls,identical"; }

std::string bench_csv_row(const BenchRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%.4f,%zu,%.2f,%.2f,%.3f,%zu,%s", r.kind.c_str(), r.ratio, r.units, r.batch_ms,
                r.inc_ms, r.speedup, r.affected, r.identical ? "yes" : "no");
  return buf;
}

std::optional<double> crossover(const std::vector<BenchRow>& rows) {
  for (const auto& r : rows)
    if (r.speedup < 1.0) return r.ratio;
  return std::nullopt;
}

}  // namespace teamsim
