#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "teamsim/common.h"

namespace teamsim {

struct Team {
  std::vector<NodeId> nodes;                      // ascending internal ids
  std::vector<std::pair<NodeId, NodeId>> edges;   // (a < b), ascending
  Density density;
  NodeId center = kNoNode;
  Hop radius = 0;

  bool same_members(const Team& o) const { return nodes == o.nodes && edges == o.edges; }
};

// Total order used for ranking: density desc, size asc, node list asc, then
// provenance (center, radius) asc.
bool team_before(const Team& a, const Team& b);

// Bounded list of the k best distinct teams.
class TopKList {
 public:
  explicit TopKList(std::size_t k = 10) : k_(k) {}

  // Returns whether the list changed. A team already present keeps the
  // smallest (center, radius) provenance.
  bool insert(Team t);
  // Density of the k-th entry; nullopt (negative infinity) while not full.
  std::optional<Density> kth_density() const;
  bool full() const { return entries_.size() >= k_; }

  std::size_t k() const { return k_; }
  const std::vector<Team>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Bit-identical comparison including provenance.
  bool identical(const TopKList& o) const;

 private:
  std::size_t k_;
  std::vector<Team> entries_;
};

// Whether a ball with filter bound `bound` can be skipped given the current
// k-th density. Teams in a ball with an edge are strictly below the bound; a
// zero bound still admits the density-0 singleton team.
bool bound_excludes(const Density& bound, const std::optional<Density>& kth);

}  // namespace teamsim
