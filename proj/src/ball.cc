#include "teamsim/ball.h"

#include <algorithm>

namespace teamsim {

std::uint32_t Ball::local(NodeId v) const {
  auto it = std::lower_bound(by_global.begin(), by_global.end(), std::make_pair(v, std::uint32_t{0}));
  if (it == by_global.end() || it->first != v) return kNoLocal;
  return it->second;
}

void BallExtractor::prepare() {
  if (stamp_.size() < g_.id_bound()) {
    stamp_.resize(g_.id_bound(), 0);
    hop_.resize(g_.id_bound(), 0);
    local_.resize(g_.id_bound(), kNoLocal);
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

bool BallExtractor::relevant(NodeId v, const std::vector<char>& relevant_label) const {
  for (LabelId l : g_.labels(v))
    if (l < relevant_label.size() && relevant_label[l]) return true;
  return false;
}

void BallExtractor::bfs(NodeId center, Hop r) {
  prepare();
  order_.clear();
  order_.push_back(center);
  stamp_[center] = epoch_;
  hop_[center] = 0;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    NodeId v = order_[head];
    Hop h = hop_[v];
    if (h >= r) continue;
    for (NodeId w : g_.neighbors(v)) {
      if (stamp_[w] == epoch_) continue;
      stamp_[w] = epoch_;
      hop_[w] = h + 1;
      order_.push_back(w);
    }
  }
}

Ball BallExtractor::materialize(NodeId center, Hop r, const std::vector<char>* relevant_label) {
  Ball b;
  b.center = center;
  b.radius = r;
  b.restricted = relevant_label != nullptr;
  for (NodeId v : order_) {
    if (relevant_label && !relevant(v, *relevant_label)) {
      local_[v] = kNoLocal;
      continue;
    }
    local_[v] = static_cast<std::uint32_t>(b.nodes.size());
    b.nodes.push_back(v);
    b.hops.push_back(hop_[v]);
  }
  b.adj.resize(b.nodes.size());
  for (std::uint32_t i = 0; i < b.nodes.size(); ++i) {
    for (NodeId w : g_.neighbors(b.nodes[i])) {
      if (stamp_[w] != epoch_ || local_[w] == kNoLocal) continue;
      b.adj[i].push_back(local_[w]);
    }
    b.edge_count += b.adj[i].size();
  }
  b.edge_count /= 2;
  b.by_global.reserve(b.nodes.size());
  for (std::uint32_t i = 0; i < b.nodes.size(); ++i) b.by_global.emplace_back(b.nodes[i], i);
  std::sort(b.by_global.begin(), b.by_global.end());
  return b;
}

Ball BallExtractor::extract(NodeId center, Hop r) {
  bfs(center, r);
  return materialize(center, r, nullptr);
}

Ball BallExtractor::extract_restricted(NodeId center, Hop r, const std::vector<char>& relevant_label) {
  bfs(center, r);
  return materialize(center, r, &relevant_label);
}

const std::vector<NodeId>& BallExtractor::within(NodeId center, Hop r) {
  bfs(center, r);
  return order_;
}

Density max_core_density(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::size_t n = adj.size();
  if (n == 0) return Density{0, 1};
  // Batagelj-Zaversnik bucket peeling.
  std::vector<std::uint32_t> deg(n), pos(n), vert(n);
  std::uint32_t maxdeg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(adj[v].size());
    maxdeg = std::max(maxdeg, deg[v]);
  }
  std::vector<std::uint32_t> bin(maxdeg + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ++bin[deg[v]];
  std::uint32_t start = 0;
  for (std::uint32_t d = 0; d <= maxdeg; ++d) {
    std::uint32_t num = bin[d];
    bin[d] = start;
    start += num;
  }
  for (std::size_t v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]];
    vert[pos[v]] = static_cast<std::uint32_t>(v);
    ++bin[deg[v]];
  }
  for (std::uint32_t d = maxdeg; d >= 1; --d) bin[d] = bin[d - 1];
  bin[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t v = vert[i];
    for (std::uint32_t u : adj[v]) {
      if (deg[u] > deg[v]) {
        std::uint32_t du = deg[u], pu = pos[u], pw = bin[du], w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  std::uint32_t kmax = *std::max_element(deg.begin(), deg.end());
  std::uint64_t nodes = 0, twice_edges = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] != kmax) continue;
    ++nodes;
    for (std::uint32_t u : adj[v])
      if (deg[u] == kmax) ++twice_edges;
  }
  return Density{twice_edges / 2, nodes};
}

Density max_core_density(const Ball& ball) { return max_core_density(ball.adj); }

Density max_core_density(const DataGraph& g) {
  std::vector<std::uint32_t> local(g.id_bound(), kNoLocal);
  std::vector<NodeId> ids;
  for (NodeId v = 0; v < g.id_bound(); ++v)
    if (g.alive(v)) {
      local[v] = static_cast<std::uint32_t>(ids.size());
      ids.push_back(v);
    }
  std::vector<std::vector<std::uint32_t>> adj(ids.size());
  for (std::uint32_t i = 0; i < ids.size(); ++i)
    for (NodeId w : g.neighbors(ids[i])) adj[i].push_back(local[w]);
  return max_core_density(adj);
}

Density density_bound(const Density& rho_c) { return Density{2 * rho_c.edges, rho_c.nodes}; }

}  // namespace teamsim
