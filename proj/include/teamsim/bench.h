#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamsim/inc_engine.h"
#include "teamsim/io.h"

namespace teamsim {

// Random valid update units against an evolving copy of the input.
UpdateSet gen_data_updates(const DataGraph& g, const LabelTable& labels, std::size_t units, std::uint64_t seed);
UpdateSet gen_pattern_updates(const PatternGraph& p, const LabelTable& labels, const std::vector<std::string>& label_pool,
                              std::size_t units, std::uint64_t seed);

struct BenchConfig {
  GenParams gen;
  std::size_t pattern_nodes = 6;
  std::size_t pattern_extra_edges = 1;
  Interval cap{1, 10};
  SessionConfig session;
  std::uint64_t seed = 7;
};

struct BenchRow {
  std::string kind;
  double ratio = 0;
  std::size_t units = 0;
  double batch_ms = 0;
  double inc_ms = 0;
  double speedup = 0;
  std::size_t affected = 0;
  bool identical = false;
};

// kind: pattern | data | both | continuous. The ratio is relative to
// |V|+|E| of the graph for data units and of the pattern for pattern units.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, const std::string& kind, const std::vector<double>& ratios,
                                const DataGraph* graph = nullptr, const LabelTable* graph_labels = nullptr,
                                const PatternGraph* pattern = nullptr);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);
// Smallest ratio whose speedup drops below 1.
std::optional<double> crossover(const std::vector<BenchRow>& rows);

}  // namespace teamsim
