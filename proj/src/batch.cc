#include "teamsim/batch.h"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "teamsim/ball.h"
#include "teamsim/simulation.h"

namespace teamsim {

namespace {

struct SharedBound {
  std::mutex mu;
  std::optional<Density> kth;

  std::optional<Density> get() {
    std::lock_guard<std::mutex> lock(mu);
    return kth;
  }
  void offer(const std::optional<Density>& d) {
    if (!d) return;
    std::lock_guard<std::mutex> lock(mu);
    if (!kth || *d > *kth) kth = d;
  }
};

void process_center(NodeId v, const PatternView& view, const DataGraph& g, const BatchOptions& opt,
                    BallExtractor& ex, TopKList& local, SharedBound* shared, BatchStats& stats) {
  Ball ball = ex.extract(v, opt.r);
  ++stats.balls_visited;
  if (opt.filter) {
    std::optional<Density> kth = local.kth_density();
    if (shared) {
      auto s = shared->get();
      if (s && (!kth || *s > *kth)) kth = s;
    }
    if (kth) {
      ++stats.cores_computed;
      if (bound_excludes(density_bound(max_core_density(ball)), kth)) {
        ++stats.balls_filtered;
        return;
      }
    }
  }
  LocalRelation rel = undirg_sim(view, ball, g);
  if (rel.empty()) return;
  bool changed = false;
  if (capacity_check(view, rel)) changed |= local.insert(team_from(ball, rel, opt.r));
  for (Hop t = opt.r; t-- > 1;) {
    inc_sim_shrink(view, ball, rel, t);
    if (rel.empty()) break;
    if (capacity_check(view, rel)) changed |= local.insert(team_from(ball, rel, t));
  }
  if (changed && shared) shared->offer(local.kth_density());
}

}  // namespace

BatchResult batch_run(const PatternGraph& p, const DataGraph& g, const BatchOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  BatchResult res;
  res.topk = TopKList(opt.k);
  res.satisfiable = pattern_satisfiable(p);
  if (res.satisfiable) {
    PatternView view = PatternView::whole(p);
    unsigned threads = std::max(1u, opt.threads);
    if (threads == 1) {
      BallExtractor ex(g);
      for (NodeId v = 0; v < g.id_bound(); ++v)
        if (g.alive(v)) process_center(v, view, g, opt, ex, res.topk, nullptr, res.stats);
    } else {
      SharedBound shared;
      std::atomic<NodeId> next{0};
      std::vector<TopKList> lists(threads, TopKList(opt.k));
      std::vector<BatchStats> stats(threads);
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) {
        pool.emplace_back([&, i] {
          BallExtractor ex(g);
          for (;;) {
            NodeId v = next.fetch_add(1);
            if (v >= g.id_bound()) break;
            if (g.alive(v)) process_center(v, view, g, opt, ex, lists[i], &shared, stats[i]);
          }
        });
      }
      for (auto& t : pool) t.join();
      for (unsigned i = 0; i < threads; ++i) {
        for (const Team& t : lists[i].entries()) res.topk.insert(t);
        res.stats.balls_visited += stats[i].balls_visited;
        res.stats.balls_filtered += stats[i].balls_filtered;
        res.stats.cores_computed += stats[i].cores_computed;
      }
    }
  }
  res.stats.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

TopKList batch_topk(const PatternGraph& p, const DataGraph& g, const BatchOptions& opt) {
  BatchResult res = batch_run(p, g, opt);
  if (!res.satisfiable) throw Error(ErrorKind::kUnsatisfiablePattern, "pattern admits no team simulation");
  return std::move(res.topk);
}

}  // namespace teamsim
