#include "teamsim/simulation.h"

#include <algorithm>

namespace teamsim {

std::uint32_t PatternView::local(PNodeId u) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), u);
  if (it == ids.end() || *it != u) return kNoLocal;
  return static_cast<std::uint32_t>(it - ids.begin());
}

PatternView PatternView::whole(const PatternGraph& p) { return induced(p, p.nodes()); }

PatternView PatternView::induced(const PatternGraph& p, std::vector<PNodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  PatternView v;
  v.ids = std::move(nodes);
  v.adj.resize(v.ids.size());
  for (std::uint32_t i = 0; i < v.ids.size(); ++i) {
    v.labels.push_back(p.label(v.ids[i]));
    v.caps.push_back(p.capacity(v.ids[i]));
    for (PNodeId w : p.neighbors(v.ids[i])) {
      std::uint32_t j = v.local(w);
      if (j != kNoLocal) v.adj[i].push_back(j);
    }
  }
  return v;
}

bool LocalRelation::empty() const {
  return std::all_of(count.begin(), count.end(), [](std::uint32_t c) { return c == 0; });
}

bool LocalRelation::any_empty() const {
  return std::any_of(count.begin(), count.end(), [](std::uint32_t c) { return c == 0; });
}

void LocalRelation::clear() {
  for (auto& row : in) std::fill(row.begin(), row.end(), 0);
  std::fill(count.begin(), count.end(), 0);
}

const std::vector<NodeId>* MatchRelation::find(PNodeId u) const {
  for (const auto& [p, s] : sets)
    if (p == u) return &s;
  return nullptr;
}

LocalRelation label_candidates(const PatternView& view, const Ball& ball, const DataGraph& g) {
  LocalRelation rel(view.size(), ball.size());
  for (std::uint32_t w = 0; w < ball.size(); ++w)
    for (std::uint32_t u = 0; u < view.size(); ++u)
      if (g.has_label(ball.nodes[w], view.labels[u])) rel.add(u, w);
  return rel;
}

namespace {

bool supported(const Ball& ball, const LocalRelation& rel, std::uint32_t w, std::uint32_t u2) {
  const auto& row = rel.in[u2];
  for (std::uint32_t x : ball.adj[w])
    if (row[x]) return true;
  return false;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> all_violations(const PatternView& view, const Ball& ball,
                                                                    const LocalRelation& rel) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t u = 0; u < view.size(); ++u) {
    if (view.adj[u].empty()) continue;
    for (std::uint32_t w = 0; w < ball.size(); ++w) {
      if (!rel.in[u][w]) continue;
      for (std::uint32_t u2 : view.adj[u])
        if (!supported(ball, rel, w, u2)) {
          out.emplace_back(u, w);
          break;
        }
    }
  }
  return out;
}

void propagate(const PatternView& view, const Ball& ball, LocalRelation& rel,
               std::vector<std::pair<std::uint32_t, std::uint32_t>> stack, bool canonical) {
  while (!stack.empty()) {
    auto [u, w] = stack.back();
    stack.pop_back();
    if (!rel.in[u][w]) continue;
    rel.in[u][w] = 0;
    --rel.count[u];
    for (std::uint32_t u2 : view.adj[u]) {
      for (std::uint32_t w2 : ball.adj[w]) {
        if (!rel.in[u2][w2]) continue;
        if (!supported(ball, rel, w2, u)) stack.emplace_back(u2, w2);
      }
    }
  }
  if (canonical && rel.any_empty()) rel.clear();
}

LocalRelation undirg_sim(const PatternView& view, const Ball& ball, const DataGraph& g, bool canonical) {
  LocalRelation rel = label_candidates(view, ball, g);
  if (canonical && rel.any_empty()) {
    rel.clear();
    return rel;
  }
  propagate(view, ball, rel, all_violations(view, ball, rel), canonical);
  return rel;
}

void inc_sim_shrink(const PatternView& view, const Ball& ball, LocalRelation& rel, Hop t) {
  if (rel.empty()) return;
  for (std::uint32_t u = 0; u < view.size(); ++u)
    for (std::uint32_t w = 0; w < ball.size(); ++w)
      if (ball.hops[w] > t && rel.in[u][w]) {
        rel.in[u][w] = 0;
        --rel.count[u];
      }
  propagate(view, ball, rel, all_violations(view, ball, rel));
}

void pat_e_ins(const PatternView& view, const Ball& ball, LocalRelation& rel,
               std::span<const std::pair<std::uint32_t, std::uint32_t>> added) {
  if (rel.empty()) return;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seeds;
  for (auto [a, b] : added) {
    for (std::uint32_t w = 0; w < ball.size(); ++w) {
      if (rel.in[a][w] && !supported(ball, rel, w, b)) seeds.emplace_back(a, w);
      if (rel.in[b][w] && !supported(ball, rel, w, a)) seeds.emplace_back(b, w);
    }
  }
  propagate(view, ball, rel, std::move(seeds));
}

bool capacity_check(const PatternView& view, const LocalRelation& rel) {
  for (std::uint32_t u = 0; u < view.size(); ++u)
    if (rel.count[u] == 0 || !view.caps[u].contains(rel.count[u])) return false;
  return true;
}

Team team_from(const Ball& ball, const LocalRelation& rel, Hop t) {
  std::vector<char> member(ball.size(), 0);
  for (const auto& row : rel.in)
    for (std::uint32_t w = 0; w < ball.size(); ++w)
      if (row[w]) member[w] = 1;
  Team team;
  team.center = ball.center;
  team.radius = t;
  for (std::uint32_t w = 0; w < ball.size(); ++w) {
    if (!member[w]) continue;
    team.nodes.push_back(ball.nodes[w]);
    for (std::uint32_t x : ball.adj[w])
      if (member[x] && ball.nodes[w] < ball.nodes[x]) team.edges.emplace_back(ball.nodes[w], ball.nodes[x]);
  }
  std::sort(team.nodes.begin(), team.nodes.end());
  std::sort(team.edges.begin(), team.edges.end());
  team.density = Density{team.edges.size(), team.nodes.size()};
  return team;
}

std::optional<Team> team_sim_ball(const PatternView& view, const Ball& ball, const DataGraph& g, Hop t) {
  LocalRelation rel = undirg_sim(view, ball, g);
  if (t < ball.radius) inc_sim_shrink(view, ball, rel, t);
  if (rel.empty() || !capacity_check(view, rel)) return std::nullopt;
  return team_from(ball, rel, t);
}

MatchRelation to_global(const PatternView& view, const Ball& ball, const LocalRelation& rel) {
  MatchRelation m;
  if (rel.any_empty()) return m;
  m.matched = true;
  for (std::uint32_t u = 0; u < view.size(); ++u) {
    std::vector<NodeId> s;
    s.reserve(rel.count[u]);
    for (std::uint32_t w = 0; w < ball.size(); ++w)
      if (rel.in[u][w]) s.push_back(ball.nodes[w]);
    std::sort(s.begin(), s.end());
    m.sets.emplace_back(view.ids[u], std::move(s));
  }
  return m;
}

void load_global(const PatternView& view, const Ball& ball, const MatchRelation& m, LocalRelation& rel) {
  for (const auto& [p, s] : m.sets) {
    std::uint32_t u = view.local(p);
    if (u == kNoLocal) continue;
    for (NodeId v : s) {
      std::uint32_t w = ball.local(v);
      if (w != kNoLocal) rel.add(u, w);
    }
  }
}

bool pattern_satisfiable(const PatternGraph& p) {
  PatternView view = PatternView::whole(p);
  // The pattern itself acts as the data graph.
  Ball self;
  self.nodes.assign(view.ids.begin(), view.ids.end());
  self.hops.assign(view.size(), 0);
  self.adj = view.adj;
  LocalRelation rel(view.size(), view.size());
  for (std::uint32_t u = 0; u < view.size(); ++u)
    for (std::uint32_t v = 0; v < view.size(); ++v)
      if (view.labels[u] == view.labels[v]) rel.add(u, v);
  propagate(view, self, rel, all_violations(view, self, rel), false);
  for (std::uint32_t u = 0; u < view.size(); ++u)
    for (std::uint32_t v = 0; v < view.size(); ++v)
      if (rel.in[u][v] && view.caps[v].lower > view.caps[u].upper) return false;
  return true;
}

}  // namespace teamsim
