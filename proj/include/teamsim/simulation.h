#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "teamsim/ball.h"
#include "teamsim/graph.h"
#include "teamsim/team.h"

namespace teamsim {

// A pattern (or pattern fragment) in dense local indices.
struct PatternView {
  std::vector<PNodeId> ids;  // ascending
  std::vector<LabelId> labels;
  std::vector<Interval> caps;
  std::vector<std::vector<std::uint32_t>> adj;

  std::size_t size() const { return ids.size(); }
  std::uint32_t local(PNodeId u) const;

  static PatternView whole(const PatternGraph& p);
  // Induced on `nodes` (fragment edges only).
  static PatternView induced(const PatternGraph& p, std::vector<PNodeId> nodes);
};

// Relation between view nodes and ball-local nodes.
struct LocalRelation {
  std::vector<std::vector<char>> in;
  std::vector<std::uint32_t> count;

  LocalRelation() = default;
  LocalRelation(std::size_t pattern_size, std::size_t ball_size)
      : in(pattern_size, std::vector<char>(ball_size, 0)), count(pattern_size, 0) {}

  bool empty() const;  // every set empty (canonical empty or trivial)
  bool any_empty() const;
  void clear();
  void add(std::uint32_t u, std::uint32_t w) {
    if (!in[u][w]) {
      in[u][w] = 1;
      ++count[u];
    }
  }
};

// Relation keyed by internal ids; what the index stores per fragment.
struct MatchRelation {
  bool matched = false;
  std::vector<std::pair<PNodeId, std::vector<NodeId>>> sets;

  const std::vector<NodeId>* find(PNodeId u) const;
  bool operator==(const MatchRelation&) const = default;
};

// Nodes of the ball carrying each view label.
LocalRelation label_candidates(const PatternView& view, const Ball& ball, const DataGraph& g);

// Removes (u, w) pairs and cascades until every remaining pair is supported
// along every view edge. Seeds are processed LIFO. When `canonical` is set
// and some set ends up empty, the whole relation is cleared.
void propagate(const PatternView& view, const Ball& ball, LocalRelation& rel,
               std::vector<std::pair<std::uint32_t, std::uint32_t>> seeds, bool canonical = true);

// Pushes every pair lacking support along any view edge.
std::vector<std::pair<std::uint32_t, std::uint32_t>> all_violations(const PatternView& view, const Ball& ball,
                                                                    const LocalRelation& rel);

// Maximum dual simulation of `view` in `ball`; canonical empty when some
// pattern node has no match.
LocalRelation undirg_sim(const PatternView& view, const Ball& ball, const DataGraph& g, bool canonical = true);

// Restricts an outer-ball relation to hop <= t and refines it.
void inc_sim_shrink(const PatternView& view, const Ball& ball, LocalRelation& rel, Hop t);

// Folds the insertion of pattern edges `added` (local view indices, already
// present in view.adj) into a relation that was maximal without them.
void pat_e_ins(const PatternView& view, const Ball& ball, LocalRelation& rel,
               std::span<const std::pair<std::uint32_t, std::uint32_t>> added);

bool capacity_check(const PatternView& view, const LocalRelation& rel);

// Induced team on the matched nodes.
Team team_from(const Ball& ball, const LocalRelation& rel, Hop t);

// Team subgraph of the ball at radius t if it is a perfect subgraph.
std::optional<Team> team_sim_ball(const PatternView& view, const Ball& ball, const DataGraph& g, Hop t);

MatchRelation to_global(const PatternView& view, const Ball& ball, const LocalRelation& rel);
// Loads stored relations into local form; nodes missing from the ball are dropped.
void load_global(const PatternView& view, const Ball& ball, const MatchRelation& m, LocalRelation& rel);

// Whether some data graph has a team simulation of p.
bool pattern_satisfiable(const PatternGraph& p);

}  // namespace teamsim
