#pragma once

#include <vector>

#include "teamsim/batch.h"
#include "teamsim/fragmentation.h"
#include "teamsim/inc_index.h"
#include "teamsim/updates.h"

namespace teamsim {

struct SessionConfig {
  Hop r = 2;
  std::size_t k = 10;
  std::size_t h = 3;  // clamped to |V_P|
  bool filter = true;
  bool early_return = true;
  unsigned threads = 1;
};

struct UpdateStats {
  std::size_t units = 0;
  std::size_t balls_affected = 0;
  std::size_t balls_pattern_affected = 0;
  std::size_t balls_structural = 0;
  std::size_t balls_created = 0;
  std::size_t balls_retired = 0;
  std::size_t balls_visited = 0;
  std::size_t visits_outside_affected = 0;
  std::size_t relations_recomputed = 0;
  std::size_t relations_folded = 0;
  std::size_t combines = 0;
  std::size_t den_recomputed = 0;
  bool early_returned = false;
  double emit_ms = 0;   // time until the top-k was final
  double total_ms = 0;  // including reconciliation of the remaining balls
};

struct QueryResult {
  bool satisfiable = true;
  TopKList topk;
  UpdateStats stats;
  std::vector<NodeId> affected;  // ascending centers of AffectedBallSet
};

struct SessionCounters {
  std::size_t update_sets = 0;
  std::size_t rejected_sets = 0;
  std::size_t units = 0;
  std::size_t balls_visited = 0;
  std::size_t relations_recomputed = 0;
  std::size_t relations_folded = 0;
  std::size_t combines = 0;
  std::size_t early_returns = 0;
  std::size_t rebuilds = 0;
  double update_ms = 0;
};

// Applies a single unit, validating it against the current state.
void apply_pattern_update(PatternGraph& p, const PatternUpdate& unit, LabelTable& labels);
void apply_data_update(DataGraph& g, const DataUpdate& unit, LabelTable& labels);

// Incremental top-k team simulation over an evolving pattern and data graph.
class Session {
 public:
  Session(LabelTable labels, DataGraph g, PatternGraph p, SessionConfig cfg);
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Applies one update set atomically; throws (state unchanged) when a unit
  // is invalid or P would become disconnected.
  QueryResult apply(const UpdateSet& set);
  QueryResult dynamic_p(const std::vector<PatternUpdate>& dp);
  QueryResult dynamic_g(const std::vector<DataUpdate>& dg);
  // Re-fragments the pattern and rebuilds the index from scratch.
  void rebuild();

  const QueryResult& current() const { return current_; }
  const DataGraph& graph() const { return g_; }
  const PatternGraph& pattern() const { return p_; }
  const LabelTable& labels() const { return labels_; }
  const Fragmentation& fragmentation() const { return frag_; }
  const FbmIndex& index() const { return idx_; }
  const SessionConfig& config() const { return cfg_; }
  const SessionCounters& counters() const { return counters_; }

 private:
  struct Context;

  void initialize();
  void refresh_relevance();
  BatchOptions batch_options() const;

  PatternGraph checked_pattern(const std::vector<PatternUpdate>& dp);
  void apply_data(const std::vector<DataUpdate>& dg, std::vector<NodeId>& structural, std::vector<char>& mark);
  void commit_pattern(const std::vector<PatternUpdate>& dp);
  void ensure_den(NodeId v, UpdateStats& st);
  // Folds pending pattern updates into the ball's relations and relinks it.
  // Returns the restricted ball when one had to be extracted.
  std::optional<Ball> reconcile(NodeId v, Context& ctx);
  void combine(NodeId v, std::optional<Ball> ball, Context& ctx, TopKList& out);

  LabelTable labels_;
  DataGraph g_;
  PatternGraph p_;
  SessionConfig cfg_;
  Fragmentation frag_;
  FbmIndex idx_;
  QueryResult current_;
  SessionCounters counters_;
  std::vector<char> relevant_;
  BallExtractor ex_;
};

}  // namespace teamsim
