#pragma once

#include <vector>

#include "teamsim/graph.h"
#include "teamsim/simulation.h"
#include "teamsim/team.h"

namespace teamsim {

struct Diameter {
  Hop value = 0;           // of the largest component when disconnected
  bool connected = true;
};

struct QualityReport {
  Density density;
  Diameter diameter;
  double node_satisfiability = 0;
  double edge_satisfiability = 0;
};

// Team over an arbitrary node set: the induced subgraph of g.
Team team_from_nodes(const DataGraph& g, std::vector<NodeId> nodes);

Diameter team_diameter(const Team& team);
// Throws kDisconnected when the team is not connected.
Hop strict_diameter(const Team& team);

// Greatest simulation of p over the team's induced subgraph, without
// collapsing to empty when some pattern node is unmatched.
MatchRelation team_relation(const Team& team, const PatternGraph& p, const DataGraph& g);

double node_satisfiability(const MatchRelation& m, const PatternGraph& p);
double edge_satisfiability(const Team& team, const MatchRelation& m, const PatternGraph& p);

QualityReport quality(const Team& team, const PatternGraph& p, const DataGraph& g);

}  // namespace teamsim
