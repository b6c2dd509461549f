#pragma once

#include <string>
#include <vector>

#include "teamsim/common.h"

namespace teamsim {

enum class UpdateKind {
  kPatEdgeIns,
  kPatEdgeDel,
  kPatNodeIns,
  kPatNodeDel,
  kPatCap,
  kDataEdgeIns,
  kDataEdgeDel,
  kDataNodeIns,
  kDataNodeDel,
};

bool is_pattern_kind(UpdateKind k);
bool is_deletion(UpdateKind k);

// One pattern unit. Node ids are external names. For node insertion `b` is
// the anchor.
struct PatternUpdate {
  UpdateKind kind = UpdateKind::kPatEdgeIns;
  std::string a;
  std::string b;
  std::string label;
  Interval cap;

  std::string str() const;
};

struct DataUpdate {
  UpdateKind kind = UpdateKind::kDataEdgeIns;
  std::string a;
  std::string b;
  std::vector<std::string> labels;

  std::string str() const;
};

struct UpdateSet {
  std::vector<PatternUpdate> pattern;
  std::vector<DataUpdate> data;

  bool empty() const { return pattern.empty() && data.empty(); }
  std::size_t size() const { return pattern.size() + data.size(); }
};

}  // namespace teamsim
