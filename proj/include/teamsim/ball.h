#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "teamsim/common.h"
#include "teamsim/graph.h"

namespace teamsim {

inline constexpr std::uint32_t kNoLocal = static_cast<std::uint32_t>(-1);

// Induced subgraph on nodes within `radius` hops of `center`. Hops are
// distances in the whole data graph. A restricted ball materializes only the
// nodes carrying a relevant label (plus the edges among them).
struct Ball {
  NodeId center = kNoNode;
  Hop radius = 0;
  bool restricted = false;
  std::vector<NodeId> nodes;
  std::vector<Hop> hops;
  std::vector<std::vector<std::uint32_t>> adj;
  std::size_t edge_count = 0;

  std::size_t size() const { return nodes.size(); }
  // Local index of a global node, kNoLocal if absent.
  std::uint32_t local(NodeId v) const;

  std::vector<std::pair<NodeId, std::uint32_t>> by_global;  // sorted
};

// Reusable BFS scratch space; one per thread.
class BallExtractor {
 public:
  explicit BallExtractor(const DataGraph& g) : g_(g) {}

  Ball extract(NodeId center, Hop r);
  Ball extract_restricted(NodeId center, Hop r, const std::vector<char>& relevant_label);
  // All alive nodes within r hops of center (center included).
  const std::vector<NodeId>& within(NodeId center, Hop r);

 private:
  void prepare();
  bool relevant(NodeId v, const std::vector<char>& relevant_label) const;
  void bfs(NodeId center, Hop r);
  Ball materialize(NodeId center, Hop r, const std::vector<char>* relevant_label);

  const DataGraph& g_;
  std::vector<std::uint32_t> stamp_;
  std::vector<Hop> hop_;
  std::vector<std::uint32_t> local_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> order_;
};

// Maximum-core density rho_c of a local adjacency structure: the induced
// subgraph on the nodes whose core number equals the maximum core number.
Density max_core_density(const std::vector<std::vector<std::uint32_t>>& adj);
Density max_core_density(const Ball& ball);
Density max_core_density(const DataGraph& g);

// 2 * rho_c, the filter bound of a ball.
Density density_bound(const Density& rho_c);

}  // namespace teamsim
