#pragma once

#include "teamsim/graph.h"
#include "teamsim/team.h"

namespace teamsim {

struct BatchOptions {
  Hop r = 2;
  std::size_t k = 10;
  bool filter = true;
  unsigned threads = 1;
};

struct BatchStats {
  std::size_t balls_visited = 0;
  std::size_t balls_filtered = 0;
  std::size_t cores_computed = 0;
  double total_ms = 0;
};

struct BatchResult {
  bool satisfiable = true;
  TopKList topk;
  BatchStats stats;
};

// Top-k diversified team simulation from scratch. An unsatisfiable pattern
// yields satisfiable = false and an empty list.
BatchResult batch_run(const PatternGraph& p, const DataGraph& g, const BatchOptions& opt);

// Same, but throws kUnsatisfiablePattern.
TopKList batch_topk(const PatternGraph& p, const DataGraph& g, const BatchOptions& opt);

}  // namespace teamsim
