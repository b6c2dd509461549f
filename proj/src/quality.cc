#include "teamsim/quality.h"

#include <algorithm>
#include <deque>

namespace teamsim {

namespace {

// Local adjacency of a team; index i is team.nodes[i].
std::vector<std::vector<std::uint32_t>> local_adj(const Team& team) {
  std::vector<std::vector<std::uint32_t>> adj(team.nodes.size());
  auto idx = [&](NodeId v) {
    return static_cast<std::uint32_t>(std::lower_bound(team.nodes.begin(), team.nodes.end(), v) - team.nodes.begin());
  };
  for (auto [a, b] : team.edges) {
    std::uint32_t x = idx(a), y = idx(b);
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  return adj;
}

}  // namespace

Team team_from_nodes(const DataGraph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  Team t;
  t.nodes = nodes;
  for (NodeId v : nodes)
    for (NodeId w : g.neighbors(v))
      if (v < w && std::binary_search(nodes.begin(), nodes.end(), w)) t.edges.emplace_back(v, w);
  std::sort(t.edges.begin(), t.edges.end());
  t.density = Density{t.edges.size(), std::max<std::size_t>(1, t.nodes.size())};
  if (t.nodes.empty()) t.density.edges = 0;
  return t;
}

Diameter team_diameter(const Team& team) {
  auto adj = local_adj(team);
  const std::size_t n = adj.size();
  Diameter d;
  std::vector<int> comp(n, -1);
  std::vector<std::size_t> comp_size;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int c = static_cast<int>(comp_size.size());
    comp_size.push_back(0);
    std::deque<std::uint32_t> q{static_cast<std::uint32_t>(s)};
    comp[s] = c;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      ++comp_size[c];
      for (auto w : adj[v])
        if (comp[w] < 0) {
          comp[w] = c;
          q.push_back(w);
        }
    }
  }
  d.connected = comp_size.size() <= 1;
  int largest = 0;
  for (std::size_t c = 1; c < comp_size.size(); ++c)
    if (comp_size[c] > comp_size[largest]) largest = static_cast<int>(c);
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != largest) continue;
    std::vector<int> dist(n, -1);
    std::deque<std::uint32_t> q{static_cast<std::uint32_t>(s)};
    dist[s] = 0;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      d.value = std::max<Hop>(d.value, static_cast<Hop>(dist[v]));
      for (auto w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
    }
  }
  return d;
}

Hop strict_diameter(const Team& team) {
  Diameter d = team_diameter(team);
  if (!d.connected)
    throw Error(ErrorKind::kDisconnected, "team is disconnected; largest component has diameter " +
                                              std::to_string(d.value));
  return d.value;
}

MatchRelation team_relation(const Team& team, const PatternGraph& p, const DataGraph& g) {
  Ball ball;
  ball.nodes = team.nodes;
  ball.hops.assign(team.nodes.size(), 0);
  ball.adj = local_adj(team);
  ball.edge_count = team.edges.size();
  for (std::uint32_t i = 0; i < ball.nodes.size(); ++i) ball.by_global.emplace_back(ball.nodes[i], i);
  PatternView view = PatternView::whole(p);
  LocalRelation rel = undirg_sim(view, ball, g, false);
  MatchRelation m;
  m.matched = !rel.any_empty();
  for (std::uint32_t u = 0; u < view.size(); ++u) {
    std::vector<NodeId> s;
    for (std::uint32_t w = 0; w < ball.size(); ++w)
      if (rel.in[u][w]) s.push_back(ball.nodes[w]);
    m.sets.emplace_back(view.ids[u], std::move(s));
  }
  return m;
}

double node_satisfiability(const MatchRelation& m, const PatternGraph& p) {
  if (p.num_nodes() == 0) return 0;
  std::size_t sat = 0;
  for (PNodeId u : p.nodes()) {
    const auto* s = m.find(u);
    if (s && !s->empty() && p.capacity(u).contains(s->size())) ++sat;
  }
  return double(sat) / double(p.num_nodes());
}

double edge_satisfiability(const Team& team, const MatchRelation& m, const PatternGraph& p) {
  if (p.num_edges() == 0) return 1;
  auto linked = [&](NodeId a, NodeId b) {
    auto e = std::minmax(a, b);
    return std::binary_search(team.edges.begin(), team.edges.end(), std::make_pair(e.first, e.second));
  };
  auto covers = [&](const std::vector<NodeId>& from, const std::vector<NodeId>& to) {
    for (NodeId a : from)
      if (std::none_of(to.begin(), to.end(), [&](NodeId b) { return linked(a, b); })) return false;
    return true;
  };
  std::size_t sat = 0;
  for (auto [u1, u2] : p.edges()) {
    const auto* s1 = m.find(u1);
    const auto* s2 = m.find(u2);
    if (!s1 || !s2 || s1->empty() || s2->empty()) continue;
    if (covers(*s1, *s2) && covers(*s2, *s1)) ++sat;
  }
  return double(sat) / double(p.num_edges());
}

QualityReport quality(const Team& team, const PatternGraph& p, const DataGraph& g) {
  QualityReport q;
  q.density = team.density;
  q.diameter = team_diameter(team);
  MatchRelation m = team_relation(team, p, g);
  q.node_satisfiability = node_satisfiability(m, p);
  q.edge_satisfiability = edge_satisfiability(team, m, p);
  return q;
}

}  // namespace teamsim
