#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "teamsim/graph.h"
#include "teamsim/updates.h"

namespace teamsim {

// Text grammars (one record per line, '#' starts a comment):
//   graph:    node <id> <label>[,<label>...]   |  edge <id> <id>
//   pattern:  pnode <id> <label> [x,y]|[x,*]   |  pedge <id> <id>
//   updates:  p+edge a b | p-edge a b | p+node u anchor=a label=L cap=[x,y]
//             p-node u | p.cap u [x,y] | g+edge a b | g-edge a b
//             g+node v anchor=a labels=L1,L2 | g-node v
//             sets are separated by a line "---".
DataGraph parse_graph(std::string_view text, LabelTable& labels);
PatternGraph parse_pattern(std::string_view text, LabelTable& labels);
std::vector<UpdateSet> parse_updates(std::string_view text);

// Single update line; `line` is used for error positions.
bool is_pattern_update_line(std::string_view line);
PatternUpdate parse_pattern_update(std::string_view line, int line_no = 1);
DataUpdate parse_data_update(std::string_view line, int line_no = 1);
// Adds one unit line to the set (pattern or data).
void parse_update_into(std::string_view line, int line_no, UpdateSet& set);

Interval parse_interval(std::string_view text, int line_no = 1, int column = 1);

std::string serialize_graph(const DataGraph& g, const LabelTable& labels);
std::string serialize_pattern(const PatternGraph& p, const LabelTable& labels);
std::string serialize_updates(const std::vector<UpdateSet>& sets);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

struct GenParams {
  std::size_t n = 1000;
  double d = 4.0;            // target average degree
  std::size_t labels = 20;
  std::size_t communities = 4;
  double intra_prob = 0.9;
  double inter_prob = 0.1;
  std::uint64_t seed = 1;
};

// Planted-community graph: node ids are decimal strings, labels are "L<i>".
DataGraph gen_planted(const GenParams& params, LabelTable& labels);

// Pattern sampled from a connected piece of g, so that it has matches.
PatternGraph gen_pattern_from(const DataGraph& g, const LabelTable& labels, LabelTable& out_labels,
                              std::size_t nodes, std::size_t extra_edges, Interval cap, std::uint64_t seed);

}  // namespace teamsim
