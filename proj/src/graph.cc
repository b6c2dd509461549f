#include "teamsim/graph.h"

#include <algorithm>
#include <cstdio>

namespace teamsim {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kDuplicateNode: return "DuplicateNode";
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kUnknownNode: return "UnknownNode";
    case ErrorKind::kSelfLoop: return "SelfLoop";
    case ErrorKind::kInvalidInterval: return "InvalidInterval";
    case ErrorKind::kPatternDisconnected: return "PatternDisconnected";
    case ErrorKind::kInvalidUpdate: return "InvalidUpdate";
    case ErrorKind::kInvalidH: return "InvalidH";
    case ErrorKind::kUnsatisfiablePattern: return "UnsatisfiablePattern";
    case ErrorKind::kDisconnected: return "Disconnected";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

namespace {

std::string format_error(ErrorKind kind, const std::string& msg, int line, int column) {
  std::string out = error_kind_name(kind);
  if (line > 0) out += " at " + std::to_string(line) + ":" + std::to_string(column);
  out += ": " + msg;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& msg, int line, int column)
    : std::runtime_error(format_error(kind, msg, line, column)),
      kind_(kind), line_(line), column_(column) {}

std::string Interval::str() const {
  return "[" + std::to_string(lower) + "," + (unbounded() ? std::string("*") : std::to_string(upper)) + "]";
}

std::string Density::str() const {
  return std::to_string(edges) + "/" + std::to_string(nodes);
}

LabelId LabelTable::intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  LabelId id = static_cast<LabelId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

LabelId LabelTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? kNoLabel : it->second;
}

// ---------------------------------------------------------------------------
// DataGraph

NodeId DataGraph::add_node(const std::string& name, std::vector<LabelId> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto it = index_.find(name);
  NodeId v;
  if (it != index_.end()) {
    v = it->second;
    if (alive_[v]) throw Error(ErrorKind::kDuplicateNode, "node '" + name + "' already exists");
    alive_[v] = 1;
    labels_[v] = std::move(labels);
  } else {
    v = static_cast<NodeId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, v);
    alive_.push_back(1);
    labels_.push_back(std::move(labels));
    adj_.emplace_back();
  }
  ++num_nodes_;
  return v;
}

void DataGraph::add_edge(NodeId a, NodeId b) {
  if (!alive(a) || !alive(b)) throw Error(ErrorKind::kUnknownNode, "edge endpoint does not exist");
  if (a == b) throw Error(ErrorKind::kSelfLoop, "self-loop on '" + names_[a] + "'");
  if (has_edge(a, b))
    throw Error(ErrorKind::kDuplicateEdge, "edge (" + names_[a] + "," + names_[b] + ") already exists");
  adj_[a].push_back(b);
  adj_[b].push_back(a);
  ++num_edges_;
}

namespace {

bool erase_one(std::vector<NodeId>& v, NodeId x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return false;
  *it = v.back();
  v.pop_back();
  return true;
}

}  // namespace

void DataGraph::remove_edge(NodeId a, NodeId b) {
  if (!alive(a) || !alive(b) || !erase_one(adj_[a], b))
    throw Error(ErrorKind::kInvalidUpdate, "edge does not exist");
  erase_one(adj_[b], a);
  --num_edges_;
}

std::vector<NodeId> DataGraph::remove_node(NodeId v) {
  if (!alive(v)) throw Error(ErrorKind::kUnknownNode, "node does not exist");
  std::vector<NodeId> nbrs = std::move(adj_[v]);
  adj_[v].clear();
  for (NodeId w : nbrs) erase_one(adj_[w], v);
  num_edges_ -= nbrs.size();
  alive_[v] = 0;
  --num_nodes_;
  return nbrs;
}

bool DataGraph::has_edge(NodeId a, NodeId b) const {
  if (!alive(a) || !alive(b)) return false;
  const auto& x = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  NodeId other = adj_[a].size() <= adj_[b].size() ? b : a;
  return std::find(x.begin(), x.end(), other) != x.end();
}

NodeId DataGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end() || !alive_[it->second]) return kNoNode;
  return it->second;
}

NodeId DataGraph::require(std::string_view name) const {
  NodeId v = find(name);
  if (v == kNoNode) throw Error(ErrorKind::kUnknownNode, "unknown node '" + std::string(name) + "'");
  return v;
}

bool DataGraph::has_label(NodeId v, LabelId l) const {
  return std::binary_search(labels_[v].begin(), labels_[v].end(), l);
}

std::vector<std::pair<NodeId, NodeId>> DataGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges_);
  for (NodeId v = 0; v < adj_.size(); ++v)
    for (NodeId w : adj_[v])
      if (v < w) out.emplace_back(v, w);
  std::sort(out.begin(), out.end());
  return out;
}

bool DataGraph::same_as(const DataGraph& o, const LabelTable& mine, const LabelTable& theirs) const {
  if (num_nodes_ != o.num_nodes_ || num_edges_ != o.num_edges_) return false;
  auto label_names = [](const std::vector<LabelId>& ls, const LabelTable& t) {
    std::vector<std::string> out;
    for (LabelId l : ls) out.push_back(t.name(l));
    std::sort(out.begin(), out.end());
    return out;
  };
  for (NodeId v = 0; v < id_bound(); ++v) {
    if (!alive_[v]) continue;
    NodeId w = o.find(names_[v]);
    if (w == kNoNode) return false;
    if (label_names(labels_[v], mine) != label_names(o.labels_[w], theirs)) return false;
    for (NodeId x : adj_[v])
      if (!o.has_edge(w, o.find(names_[x]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PatternGraph

PNodeId PatternGraph::add_node(const std::string& name, LabelId label, Interval cap) {
  if (cap.lower > cap.upper) throw Error(ErrorKind::kInvalidInterval, "capacity " + cap.str() + " has x > y");
  auto it = index_.find(name);
  PNodeId u;
  if (it != index_.end()) {
    u = it->second;
    if (alive_[u]) throw Error(ErrorKind::kDuplicateNode, "pattern node '" + name + "' already exists");
    alive_[u] = 1;
    label_[u] = label;
    cap_[u] = cap;
  } else {
    u = static_cast<PNodeId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, u);
    alive_.push_back(1);
    label_.push_back(label);
    cap_.push_back(cap);
    adj_.emplace_back();
  }
  ++num_nodes_;
  return u;
}

void PatternGraph::add_edge(PNodeId a, PNodeId b) {
  if (!alive(a) || !alive(b)) throw Error(ErrorKind::kUnknownNode, "pattern edge endpoint does not exist");
  if (a == b) throw Error(ErrorKind::kSelfLoop, "self-loop on '" + names_[a] + "'");
  if (has_edge(a, b))
    throw Error(ErrorKind::kDuplicateEdge, "pattern edge (" + names_[a] + "," + names_[b] + ") already exists");
  adj_[a].insert(std::lower_bound(adj_[a].begin(), adj_[a].end(), b), b);
  adj_[b].insert(std::lower_bound(adj_[b].begin(), adj_[b].end(), a), a);
  ++num_edges_;
}

void PatternGraph::remove_edge(PNodeId a, PNodeId b) {
  if (!has_edge(a, b)) throw Error(ErrorKind::kInvalidUpdate, "pattern edge does not exist");
  adj_[a].erase(std::lower_bound(adj_[a].begin(), adj_[a].end(), b));
  adj_[b].erase(std::lower_bound(adj_[b].begin(), adj_[b].end(), a));
  --num_edges_;
}

std::vector<PNodeId> PatternGraph::remove_node(PNodeId u) {
  if (!alive(u)) throw Error(ErrorKind::kUnknownNode, "pattern node does not exist");
  std::vector<PNodeId> nbrs = adj_[u];
  for (PNodeId w : nbrs) remove_edge(u, w);
  alive_[u] = 0;
  --num_nodes_;
  return nbrs;
}

void PatternGraph::set_capacity(PNodeId u, Interval cap) {
  if (!alive(u)) throw Error(ErrorKind::kUnknownNode, "pattern node does not exist");
  if (cap.lower > cap.upper) throw Error(ErrorKind::kInvalidInterval, "capacity " + cap.str() + " has x > y");
  cap_[u] = cap;
}

bool PatternGraph::has_edge(PNodeId a, PNodeId b) const {
  if (!alive(a) || !alive(b)) return false;
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

PNodeId PatternGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end() || !alive_[it->second]) return kNoNode;
  return it->second;
}

PNodeId PatternGraph::require(std::string_view name) const {
  PNodeId u = find(name);
  if (u == kNoNode) throw Error(ErrorKind::kUnknownNode, "unknown pattern node '" + std::string(name) + "'");
  return u;
}

std::vector<PNodeId> PatternGraph::nodes() const {
  std::vector<PNodeId> out;
  for (PNodeId u = 0; u < alive_.size(); ++u)
    if (alive_[u]) out.push_back(u);
  return out;
}

std::vector<std::pair<PNodeId, PNodeId>> PatternGraph::edges() const {
  std::vector<std::pair<PNodeId, PNodeId>> out;
  for (PNodeId u = 0; u < adj_.size(); ++u)
    for (PNodeId w : adj_[u])
      if (u < w) out.emplace_back(u, w);
  return out;
}

bool PatternGraph::connected() const {
  if (num_nodes_ == 0) return false;
  std::vector<char> seen(id_bound(), 0);
  std::vector<PNodeId> stack{nodes().front()};
  seen[stack.back()] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    PNodeId u = stack.back();
    stack.pop_back();
    ++count;
    for (PNodeId w : adj_[u])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return count == num_nodes_;
}

void PatternGraph::require_connected() const {
  if (!connected()) throw Error(ErrorKind::kPatternDisconnected, "pattern is empty or disconnected");
}

std::vector<LabelId> PatternGraph::label_set() const {
  std::vector<LabelId> out;
  for (PNodeId u : nodes()) out.push_back(label_[u]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace teamsim
