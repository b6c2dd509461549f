#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "teamsim/common.h"

namespace teamsim {

class LabelTable {
 public:
  LabelId intern(std::string_view name);
  // Returns kNoLabel when unknown.
  LabelId find(std::string_view name) const;
  const std::string& name(LabelId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

  static constexpr LabelId kNoLabel = static_cast<LabelId>(-1);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> index_;
};

// Undirected multi-labelled data graph. Internal ids are stable slots in
// declaration order; deleting a node marks its slot dead.
class DataGraph {
 public:
  NodeId add_node(const std::string& name, std::vector<LabelId> labels);
  void add_edge(NodeId a, NodeId b);
  void remove_edge(NodeId a, NodeId b);
  // Removes the node and its incident edges; returns the former neighbours.
  std::vector<NodeId> remove_node(NodeId v);

  bool has_edge(NodeId a, NodeId b) const;
  bool alive(NodeId v) const { return v < alive_.size() && alive_[v]; }
  NodeId find(std::string_view name) const;
  NodeId require(std::string_view name) const;

  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
  const std::vector<LabelId>& labels(NodeId v) const { return labels_[v]; }
  bool has_label(NodeId v, LabelId l) const;
  const std::string& name(NodeId v) const { return names_[v]; }

  // Upper bound (exclusive) on internal ids, dead slots included.
  std::size_t id_bound() const { return names_.size(); }
  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return num_edges_; }

  // Sorted (a < b) list of all edges, by internal id.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // Structural equality on external ids and labels.
  bool same_as(const DataGraph& o, const LabelTable& mine, const LabelTable& theirs) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<char> alive_;
  std::vector<std::vector<LabelId>> labels_;
  std::vector<std::vector<NodeId>> adj_;
  std::size_t num_nodes_ = 0;
  std::size_t num_edges_ = 0;
};

// Connected pattern graph; one label and one capacity bound per node.
class PatternGraph {
 public:
  PNodeId add_node(const std::string& name, LabelId label, Interval cap);
  void add_edge(PNodeId a, PNodeId b);
  void remove_edge(PNodeId a, PNodeId b);
  std::vector<PNodeId> remove_node(PNodeId u);
  void set_capacity(PNodeId u, Interval cap);

  bool has_edge(PNodeId a, PNodeId b) const;
  bool alive(PNodeId u) const { return u < alive_.size() && alive_[u]; }
  PNodeId find(std::string_view name) const;
  PNodeId require(std::string_view name) const;

  const std::vector<PNodeId>& neighbors(PNodeId u) const { return adj_[u]; }
  LabelId label(PNodeId u) const { return label_[u]; }
  const Interval& capacity(PNodeId u) const { return cap_[u]; }
  const std::string& name(PNodeId u) const { return names_[u]; }

  std::size_t id_bound() const { return names_.size(); }
  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return num_edges_; }

  // Alive node ids in ascending order.
  std::vector<PNodeId> nodes() const;
  std::vector<std::pair<PNodeId, PNodeId>> edges() const;
  bool connected() const;
  // Throws kPatternDisconnected unless non-empty and connected.
  void require_connected() const;

  std::vector<LabelId> label_set() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, PNodeId> index_;
  std::vector<char> alive_;
  std::vector<LabelId> label_;
  std::vector<Interval> cap_;
  std::vector<std::vector<PNodeId>> adj_;
  std::size_t num_nodes_ = 0;
  std::size_t num_edges_ = 0;
};

}  // namespace teamsim
