// teamsim: command-line front end (query, session, bench, gen, serve).

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "teamsim/batch.h"
#include "teamsim/bench.h"
#include "teamsim/inc_engine.h"
#include "teamsim/io.h"
#include "teamsim/json_codec.h"
#include "teamsim/service.h"

using namespace teamsim;

namespace {

struct Common {
  std::string graph;
  std::string pattern;
  unsigned r = 2;
  std::size_t k = 10;
  std::size_t h = 3;
  std::string format = "table";
  unsigned threads = 1;
  bool no_filter = false;
  bool no_early_return = false;
};

void print_table(const TopKList& list, const DataGraph& g) {
  std::printf("%-4s %-14s %-6s %-6s %-10s %-6s %s\n", "rank", "density", "nodes", "edges", "center", "radius",
              "members");
  std::size_t rank = 0;
  for (const Team& t : list.entries()) {
    std::string members;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) members += (i ? "," : "") + g.name(t.nodes[i]);
    char dens[64];
    std::snprintf(dens, sizeof dens, "%s(%.3f)", t.density.str().c_str(), t.density.value());
    std::printf("%-4zu %-14s %-6zu %-6zu %-10s %-6u %s\n", ++rank, dens, t.nodes.size(), t.edges.size(),
                g.name(t.center).c_str(), t.radius, members.c_str());
  }
  if (list.size() == 0) std::printf("(no teams)\n");
}

void print_jsonl(const TopKList& list, const DataGraph& g, int set_no) {
  std::size_t rank = 0;
  for (const Team& t : list.entries()) {
    auto j = team_json(t, g);
    j["rank"] = ++rank;
    if (set_no >= 0) j["set"] = set_no;
    std::cout << j.dump() << "\n";
  }
  std::cout.flush();
}

int run_query(const Common& c) {
  LabelTable labels;
  DataGraph g = parse_graph(read_file(c.graph), labels);
  PatternGraph p = parse_pattern(read_file(c.pattern), labels);
  BatchOptions o;
  o.r = c.r;
  o.k = c.k;
  o.filter = !c.no_filter;
  o.threads = c.threads;
  BatchResult res = batch_run(p, g, o);
  if (!res.satisfiable) {
    std::fprintf(stderr, "unsatisfiable pattern\n");
    return 2;
  }
  if (c.format == "jsonl")
    print_jsonl(res.topk, g, -1);
  else
    print_table(res.topk, g);
  return 0;
}

void report_set(const Session& s, const QueryResult& r, int set_no, const std::string& format) {
  if (format == "jsonl") {
    nlohmann::json head{{"set", set_no}, {"status", "ok"}, {"satisfiable", r.satisfiable},
                        {"stats", stats_json(r.stats)}};
    std::cout << head.dump() << "\n";
    print_jsonl(r.topk, s.graph(), set_no);
    return;
  }
  std::printf("== set %d: %s, affected=%zu visited=%zu early_return=%s emit=%.2fms total=%.2fms\n", set_no,
              r.satisfiable ? "satisfiable" : "unsatisfiable pattern", r.stats.balls_affected, r.stats.balls_visited,
              r.stats.early_returned ? "yes" : "no", r.stats.emit_ms, r.stats.total_ms);
  print_table(r.topk, s.graph());
  std::fflush(stdout);
}

int run_session(const Common& c, const std::string& script) {
  LabelTable labels;
  DataGraph g = parse_graph(read_file(c.graph), labels);
  PatternGraph p = parse_pattern(read_file(c.pattern), labels);
  SessionConfig cfg;
  cfg.r = c.r;
  cfg.k = c.k;
  cfg.h = c.h;
  cfg.filter = !c.no_filter;
  cfg.early_return = !c.no_early_return;
  cfg.threads = c.threads;
  Session s(std::move(labels), std::move(g), std::move(p), cfg);
  report_set(s, s.current(), 0, c.format);

  std::istringstream file_in;
  std::istream* in = &std::cin;
  if (!script.empty()) {
    file_in.str(read_file(script));
    in = &file_in;
  }
  int set_no = 0;
  UpdateSet pending;
  bool broken = false;
  bool any_units = false;
  auto flush = [&] {
    ++set_no;
    if (broken) {
      std::fprintf(stderr, "set %d rejected: parse error (state unchanged)\n", set_no);
    } else {
      try {
        report_set(s, s.apply(pending), set_no, c.format);
      } catch (const Error& e) {
        std::fprintf(stderr, "set %d rejected: %s (state unchanged)\n", set_no, e.what());
        if (c.format == "jsonl")
          std::cout << nlohmann::json{{"set", set_no}, {"status", "rejected"}, {"error", e.what()}}.dump() << "\n";
      }
    }
    pending = UpdateSet{};
    broken = false;
    any_units = false;
  };
  std::string line;
  int line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    std::string trimmed = line.substr(0, line.find('#'));
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) continue;
    if (trimmed == "---") {
      flush();
    } else if (trimmed == "stats") {
      std::cout << counters_json(s.counters()).dump() << "\n";
    } else if (trimmed == "rebuild") {
      s.rebuild();
      std::fprintf(stderr, "index rebuilt (h=%zu)\n", s.fragmentation().h());
    } else {
      try {
        parse_update_into(line, line_no, pending);
        any_units = true;
      } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        broken = true;
      }
    }
  }
  if (any_units || broken) flush();
  return 0;
}

std::vector<double> parse_ratios(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"teamsim: top-k diversified team simulation over evolving graphs"};
  // Subcommands take --h for the fragment count, so help is long-form only.
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool needs_files) {
    auto* g = sub->add_option("--graph", c.graph, "data graph file");
    auto* p = sub->add_option("--pattern", c.pattern, "pattern file");
    if (needs_files) {
      g->required();
      p->required();
    }
    sub->add_option("--r", c.r, "ball radius")->check(CLI::PositiveNumber);
    sub->add_option("--k", c.k, "number of teams")->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--no-filter", c.no_filter, "disable the max-core ball filter");
  };

  auto* query = app.add_subcommand("query", "batch top-k query");
  add_common(query, true);
  query->add_option("--format", c.format, "table or jsonl")->check(CLI::IsMember({"table", "jsonl"}));

  std::string script;
  auto* session = app.add_subcommand("session", "incremental session over update sets");
  add_common(session, true);
  session->add_option("--h", c.h, "number of pattern fragments")->check(CLI::PositiveNumber);
  session->add_option("--script", script, "update script (default: stdin)");
  session->add_option("--format", c.format, "table or jsonl")->check(CLI::IsMember({"table", "jsonl"}));
  session->add_flag("--no-early-return", c.no_early_return, "always reconcile and combine every affected ball");

  BenchConfig bc;
  std::string kind = "data", ratios = "0.01,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
  auto* bench = app.add_subcommand("bench", "incremental vs batch timing (CSV)");
  add_common(bench, false);
  bench->add_option("--h", c.h, "number of pattern fragments");
  bench->add_option("--kind", kind, "pattern, data, both or continuous")
      ->check(CLI::IsMember({"pattern", "data", "both", "continuous"}));
  bench->add_option("--ratios", ratios, "comma-separated update ratios");
  bench->add_option("--n", bc.gen.n, "generated nodes");
  bench->add_option("--d", bc.gen.d, "generated average degree");
  bench->add_option("--l", bc.gen.labels, "generated label count");
  bench->add_option("--communities", bc.gen.communities, "planted communities");
  bench->add_option("--seed", bc.seed, "random seed");
  bench->add_option("--pattern-nodes", bc.pattern_nodes, "sampled pattern size");
  bench->add_flag("--no-early-return", c.no_early_return, "always reconcile and combine every affected ball");

  GenParams gp;
  std::string out, pattern_out;
  std::size_t pattern_nodes = 0;
  auto* gen = app.add_subcommand("gen", "generate a planted-community graph");
  gen->add_option("--n", gp.n, "nodes");
  gen->add_option("--d", gp.d, "average degree");
  gen->add_option("--l", gp.labels, "label count");
  gen->add_option("--communities", gp.communities, "planted communities");
  gen->add_option("--intra", gp.intra_prob, "share of edges inside a community");
  gen->add_option("--inter", gp.inter_prob, "share of edges across communities");
  gen->add_option("--seed", gp.seed, "random seed");
  gen->add_option("--out", out, "graph output file (default: stdout)");
  gen->add_option("--pattern-out", pattern_out, "also sample a matching pattern");
  gen->add_option("--pattern-nodes", pattern_nodes, "sampled pattern size");

  const char* env_addr = std::getenv("TEAMSIM_ADDR");
  std::string addr = env_addr ? env_addr : "127.0.0.1:8080";
  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service (address from TEAMSIM_ADDR)");
  serve_cmd->add_option("--addr", addr, "host:port");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*query) return run_query(c);
    if (*session) return run_session(c, script);
    if (*bench) {
      bc.session.r = c.r;
      bc.session.k = c.k;
      bc.session.h = c.h;
      bc.session.threads = c.threads;
      bc.session.filter = !c.no_filter;
      bc.session.early_return = !c.no_early_return;
      std::unique_ptr<LabelTable> labels;
      std::unique_ptr<DataGraph> g;
      std::unique_ptr<PatternGraph> p;
      if (!c.graph.empty()) {
        labels = std::make_unique<LabelTable>();
        g = std::make_unique<DataGraph>(parse_graph(read_file(c.graph), *labels));
        if (!c.pattern.empty()) p = std::make_unique<PatternGraph>(parse_pattern(read_file(c.pattern), *labels));
      }
      auto rows = run_bench(bc, kind, parse_ratios(ratios), g.get(), labels.get(), p.get());
      std::printf("%s\n", bench_csv_header().c_str());
      for (const auto& r : rows) std::printf("%s\n", bench_csv_row(r).c_str());
      if (auto x = crossover(rows))
        std::printf("# crossover ratio: %.4f\n", *x);
      else
        std::printf("# crossover ratio: none (incremental faster at every ratio)\n");
      return 0;
    }
    if (*gen) {
      LabelTable labels;
      DataGraph g = gen_planted(gp, labels);
      std::string text = serialize_graph(g, labels);
      if (out.empty())
        std::cout << text;
      else
        write_file(out, text);
      if (!pattern_out.empty()) {
        PatternGraph p = gen_pattern_from(g, labels, labels, pattern_nodes ? pattern_nodes : 4, 1,
                                          Interval{1, Interval::kUnbounded}, gp.seed);
        write_file(pattern_out, serialize_pattern(p, labels));
      }
      return 0;
    }
    if (*serve_cmd) return serve(addr);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
