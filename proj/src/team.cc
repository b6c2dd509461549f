#include "teamsim/team.h"

#include <algorithm>

namespace teamsim {

bool team_before(const Team& a, const Team& b) {
  if (auto c = a.density <=> b.density; c != 0) return c > 0;
  if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  if (a.center != b.center) return a.center < b.center;
  return a.radius < b.radius;
}

bool TopKList::insert(Team t) {
  if (k_ == 0) return false;
  for (auto& e : entries_) {
    if (!e.same_members(t)) continue;
    if (std::make_pair(t.center, t.radius) < std::make_pair(e.center, e.radius)) {
      e.center = t.center;
      e.radius = t.radius;
      return true;
    }
    return false;
  }
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), t, team_before);
  if (pos == entries_.end() && full()) return false;
  entries_.insert(pos, std::move(t));
  if (entries_.size() > k_) entries_.pop_back();
  return true;
}

std::optional<Density> TopKList::kth_density() const {
  if (!full()) return std::nullopt;
  return entries_[k_ - 1].density;
}

bool TopKList::identical(const TopKList& o) const {
  if (entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Team& a = entries_[i];
    const Team& b = o.entries_[i];
    if (!a.same_members(b) || !a.density.identical(b.density) || a.center != b.center || a.radius != b.radius)
      return false;
  }
  return true;
}

bool bound_excludes(const Density& bound, const std::optional<Density>& kth) {
  if (!kth) return false;
  auto c = bound <=> *kth;
  if (c < 0) return true;
  return c == 0 && bound.edges > 0;
}

}  // namespace teamsim
