#include "teamsim/fragmentation.h"

#include <algorithm>
#include <deque>

namespace teamsim {

void Fragmentation::assign(PNodeId u, int frag) {
  if (owner_.size() <= u) owner_.resize(u + 1, kCut);
  owner_[u] = frag;
}

void Fragmentation::unassign(PNodeId u) {
  if (u < owner_.size()) owner_[u] = kCut;
}

std::vector<PNodeId> Fragmentation::nodes_of(std::size_t i) const {
  std::vector<PNodeId> out;
  for (PNodeId u = 0; u < owner_.size(); ++u)
    if (owner_[u] == static_cast<int>(i)) out.push_back(u);
  return out;
}

std::vector<std::vector<PNodeId>> Fragmentation::fragments() const {
  std::vector<std::vector<PNodeId>> out(h_);
  for (PNodeId u = 0; u < owner_.size(); ++u)
    if (owner_[u] >= 0) out[owner_[u]].push_back(u);
  return out;
}

std::vector<std::pair<PNodeId, PNodeId>> Fragmentation::cut_edges(const PatternGraph& p) const {
  std::vector<std::pair<PNodeId, PNodeId>> out;
  for (auto [a, b] : p.edges())
    if (owner(a) != owner(b)) out.emplace_back(a, b);
  return out;
}

std::size_t Fragmentation::max_fragment_size() const {
  std::size_t best = 0;
  for (const auto& f : fragments()) best = std::max(best, f.size());
  return best;
}

namespace {

std::vector<int> bfs_dist(const PatternGraph& p, PNodeId s) {
  std::vector<int> d(p.id_bound(), -1);
  std::deque<PNodeId> q{s};
  d[s] = 0;
  while (!q.empty()) {
    PNodeId u = q.front();
    q.pop_front();
    for (PNodeId w : p.neighbors(u))
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
  }
  return d;
}

}  // namespace

Fragmentation pfrag(const PatternGraph& p, std::size_t h) {
  const std::vector<PNodeId> nodes = p.nodes();
  const std::size_t n = nodes.size();
  if (h < 1 || h > n) throw Error(ErrorKind::kInvalidH, "h must be in [1, " + std::to_string(n) + "]");
  const std::size_t cap = (n + h - 1) / h;
  const std::size_t bound = cap + 1;

  // Seeds: highest degree first, then farthest from the chosen set.
  std::vector<PNodeId> seeds;
  std::vector<int> mind(p.id_bound(), -1);
  while (seeds.size() < h) {
    PNodeId best = kNoNode;
    for (PNodeId u : nodes) {
      if (std::find(seeds.begin(), seeds.end(), u) != seeds.end()) continue;
      if (best == kNoNode) {
        best = u;
        continue;
      }
      int du = seeds.empty() ? 0 : mind[u], db = seeds.empty() ? 0 : mind[best];
      if (du > db || (du == db && p.neighbors(u).size() > p.neighbors(best).size())) best = u;
    }
    seeds.push_back(best);
    std::vector<int> d = bfs_dist(p, best);
    for (PNodeId u : nodes) mind[u] = (seeds.size() == 1) ? d[u] : std::min(mind[u], d[u]);
  }

  std::vector<int> owner(p.id_bound(), kCut);
  std::vector<std::size_t> size(h, 1);
  for (std::size_t i = 0; i < h; ++i) owner[seeds[i]] = static_cast<int>(i);
  std::size_t assigned = h;

  // Round-robin growth: each fragment claims its smallest unassigned neighbour.
  for (bool grew = true; grew && assigned < n;) {
    grew = false;
    for (std::size_t i = 0; i < h && assigned < n; ++i) {
      if (size[i] >= cap) continue;
      PNodeId pick = kNoNode;
      for (PNodeId u : nodes) {
        if (owner[u] != static_cast<int>(i)) continue;
        for (PNodeId w : p.neighbors(u))
          if (owner[w] == kCut && w < pick) pick = w;
      }
      if (pick == kNoNode) continue;
      owner[pick] = static_cast<int>(i);
      ++size[i];
      ++assigned;
      grew = true;
    }
  }
  // Leftovers go to the currently smallest fragment.
  for (PNodeId u : nodes) {
    if (owner[u] != kCut) continue;
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < h; ++i)
      if (size[i] < size[smallest]) smallest = i;
    owner[u] = static_cast<int>(smallest);
    ++size[smallest];
  }

  auto links = [&](PNodeId u, int frag) {
    int c = 0;
    for (PNodeId w : p.neighbors(u))
      if (owner[w] == frag) ++c;
    return c;
  };
  for (bool improved = true; improved;) {
    improved = false;
    for (PNodeId u : nodes) {
      int from = owner[u];
      if (size[from] <= 1) continue;
      for (int to = 0; to < static_cast<int>(h); ++to) {
        if (to == from || size[to] + 1 > bound) continue;
        if (links(u, to) > links(u, from)) {
          owner[u] = to;
          --size[from];
          ++size[to];
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
    if (improved) continue;
    for (PNodeId u : nodes) {
      for (PNodeId w : nodes) {
        int fu = owner[u], fw = owner[w];
        if (w <= u || fu == fw) continue;
        int adj = p.has_edge(u, w) ? 1 : 0;
        int gain = links(u, fw) - links(u, fu) + links(w, fu) - links(w, fw) - 2 * adj;
        if (gain > 0) {
          owner[u] = fw;
          owner[w] = fu;
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
  }
  return Fragmentation(h, std::move(owner));
}

Classification classify_update(const PatternUpdate& unit, const PatternGraph& before, Fragmentation& frag) {
  Classification c;
  switch (unit.kind) {
    case UpdateKind::kPatEdgeIns:
    case UpdateKind::kPatEdgeDel: {
      int fa = frag.owner(before.require(unit.a));
      int fb = frag.owner(before.require(unit.b));
      c.target = (fa == fb) ? fa : kCut;
      break;
    }
    case UpdateKind::kPatCap:
      c.target = frag.owner(before.require(unit.a));
      break;
    case UpdateKind::kPatNodeIns: {
      c.target = frag.owner(before.require(unit.b));
      // The slot of a revived name is reused; a fresh name gets the next slot.
      PNodeId slot = before.find(unit.a);
      if (slot == kNoNode) {
        slot = static_cast<PNodeId>(before.id_bound());
        for (PNodeId u = 0; u < before.id_bound(); ++u)
          if (before.name(u) == unit.a) slot = u;
      }
      frag.assign(slot, c.target);
      break;
    }
    case UpdateKind::kPatNodeDel: {
      PNodeId u = before.require(unit.a);
      c.target = frag.owner(u);
      for (PNodeId w : before.neighbors(u))
        if (frag.owner(w) != c.target) c.severed_cut.emplace_back(std::min(u, w), std::max(u, w));
      frag.unassign(u);
      break;
    }
    default:
      throw Error(ErrorKind::kInvalidUpdate, "not a pattern update");
  }
  return c;
}

}  // namespace teamsim
