#pragma once

#include <utility>
#include <vector>

#include "teamsim/graph.h"
#include "teamsim/updates.h"

namespace teamsim {

inline constexpr int kCut = -1;

// Partition of the pattern nodes into h fragments.
class Fragmentation {
 public:
  Fragmentation() = default;
  Fragmentation(std::size_t h, std::vector<int> owner) : h_(h), owner_(std::move(owner)) {}

  std::size_t h() const { return h_; }
  int owner(PNodeId u) const { return u < owner_.size() ? owner_[u] : kCut; }
  void assign(PNodeId u, int frag);
  void unassign(PNodeId u);

  std::vector<PNodeId> nodes_of(std::size_t i) const;
  std::vector<std::vector<PNodeId>> fragments() const;
  std::vector<std::pair<PNodeId, PNodeId>> cut_edges(const PatternGraph& p) const;
  std::size_t max_fragment_size() const;

 private:
  std::size_t h_ = 0;
  std::vector<int> owner_;
};

// Deterministic h-way partition: seeded BFS growth from pairwise-distant
// high-degree seeds, then local move/swap refinement of the cut.
Fragmentation pfrag(const PatternGraph& p, std::size_t h);

struct Classification {
  int target = kCut;  // fragment index or kCut
  // Cut edges severed by a node deletion (recorded as derived cut deletions).
  std::vector<std::pair<PNodeId, PNodeId>> severed_cut;
};

// Classifies a unit against the pattern state before it is applied and
// updates the assignment for node insertions and deletions.
Classification classify_update(const PatternUpdate& unit, const PatternGraph& before, Fragmentation& frag);

}  // namespace teamsim
