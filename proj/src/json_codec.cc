#include "teamsim/json_codec.h"

namespace teamsim {

using nlohmann::json;

json team_json(const Team& t, const DataGraph& g) {
  json nodes = json::array();
  for (NodeId v : t.nodes) nodes.push_back(g.name(v));
  json edges = json::array();
  for (auto [a, b] : t.edges) edges.push_back(json::array({g.name(a), g.name(b)}));
  return json{{"nodes", nodes},
              {"edges", edges},
              {"density", {{"e", t.density.edges}, {"n", t.density.nodes}}},
              {"center", t.center == kNoNode ? std::string() : g.name(t.center)},
              {"radius", t.radius}};
}

json quality_json(const QualityReport& q) {
  return json{{"density", {{"e", q.density.edges}, {"n", q.density.nodes}}},
              {"diameter", q.diameter.value},
              {"connected", q.diameter.connected},
              {"nodeSatisfiability", q.node_satisfiability},
              {"edgeSatisfiability", q.edge_satisfiability}};
}

json stats_json(const UpdateStats& st) {
  return json{{"units", st.units},
              {"ballsAffected", st.balls_affected},
              {"ballsPatternAffected", st.balls_pattern_affected},
              {"ballsStructural", st.balls_structural},
              {"ballsCreated", st.balls_created},
              {"ballsRetired", st.balls_retired},
              {"ballsVisited", st.balls_visited},
              {"visitsOutsideAffected", st.visits_outside_affected},
              {"relationsRecomputed", st.relations_recomputed},
              {"relationsFolded", st.relations_folded},
              {"combines", st.combines},
              {"denRecomputed", st.den_recomputed},
              {"earlyReturned", st.early_returned},
              {"emitMs", st.emit_ms},
              {"totalMs", st.total_ms}};
}

json counters_json(const SessionCounters& c) {
  return json{{"updateSets", c.update_sets},
              {"rejectedSets", c.rejected_sets},
              {"units", c.units},
              {"ballsVisited", c.balls_visited},
              {"relationsRecomputed", c.relations_recomputed},
              {"relationsFolded", c.relations_folded},
              {"combines", c.combines},
              {"earlyReturns", c.early_returns},
              {"rebuilds", c.rebuilds},
              {"updateMs", c.update_ms}};
}

json topk_json(const TopKList& list, const DataGraph& g, const PatternGraph* with_quality) {
  json out = json::array();
  for (const Team& t : list.entries()) {
    json j = team_json(t, g);
    if (with_quality) j["quality"] = quality_json(quality(t, *with_quality, g));
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace teamsim
