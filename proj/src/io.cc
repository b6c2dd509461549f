#include "teamsim/io.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace teamsim {

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back(Token{line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    f(strip_comment(text.substr(start, end - start)), line_no);
    if (end == text.size()) break;
    start = end + 1;
  }
}

[[noreturn]] void parse_fail(const std::string& msg, int line, int column) {
  throw Error(ErrorKind::kParse, msg, line, column);
}

// Re-throws graph errors with a position attached.
template <typename F>
void at(int line, int column, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.line() > 0) throw;
    std::string msg = e.what();
    auto pos = msg.find(": ");
    throw Error(e.kind(), pos == std::string::npos ? msg : msg.substr(pos + 2), line, column);
  }
}

std::vector<std::string> split_labels(std::string_view s, int line, int column) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(',', start);
    std::string_view part = s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (part.empty()) parse_fail("empty label", line, column + static_cast<int>(start));
    out.emplace_back(part);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

void expect_args(const std::vector<Token>& t, std::size_t n, int line) {
  if (t.size() < n) {
    int col = t.empty() ? 1 : t.back().column + static_cast<int>(t.back().text.size());
    parse_fail("'" + std::string(t[0].text) + "' expects " + std::to_string(n - 1) + " arguments", line, col);
  }
  if (t.size() > n) parse_fail("unexpected token '" + std::string(t[n].text) + "'", line, t[n].column);
}

std::uint32_t parse_uint(std::string_view s, int line, int column) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    parse_fail("expected a non-negative integer, got '" + std::string(s) + "'", line, column);
  return static_cast<std::uint32_t>(std::stoul(std::string(s)));
}

std::string join_from(const std::vector<Token>& t, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < t.size(); ++i) s += t[i].text;
  return s;
}

}  // namespace

Interval parse_interval(std::string_view s, int line, int column) {
  if (s.size() < 5 || s.front() != '[' || s.back() != ']')
    parse_fail("expected capacity [x,y] or [x,*], got '" + std::string(s) + "'", line, column);
  std::string_view body = s.substr(1, s.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) parse_fail("capacity needs two bounds", line, column);
  Interval iv;
  iv.lower = parse_uint(body.substr(0, comma), line, column + 1);
  std::string_view hi = body.substr(comma + 1);
  if (hi == "*") {
    iv.upper = Interval::kUnbounded;
  } else {
    iv.upper = parse_uint(hi, line, column + 2 + static_cast<int>(comma));
    if (iv.lower > iv.upper)
      throw Error(ErrorKind::kInvalidInterval, "capacity " + std::string(s) + " has x > y", line, column);
  }
  return iv;
}

DataGraph parse_graph(std::string_view text, LabelTable& labels) {
  DataGraph g;
  for_each_line(text, [&](std::string_view line, int no) {
    auto t = tokenize(line);
    if (t.empty()) return;
    if (t[0].text == "node") {
      expect_args(t, 3, no);
      std::vector<LabelId> ls;
      for (const auto& l : split_labels(t[2].text, no, t[2].column)) ls.push_back(labels.intern(l));
      at(no, t[1].column, [&] { g.add_node(std::string(t[1].text), std::move(ls)); });
    } else if (t[0].text == "edge") {
      expect_args(t, 3, no);
      NodeId a = g.find(t[1].text), b = g.find(t[2].text);
      if (a == kNoNode) throw Error(ErrorKind::kUnknownNode, "unknown node '" + std::string(t[1].text) + "'", no, t[1].column);
      if (b == kNoNode) throw Error(ErrorKind::kUnknownNode, "unknown node '" + std::string(t[2].text) + "'", no, t[2].column);
      at(no, t[1].column, [&] { g.add_edge(a, b); });
    } else {
      parse_fail("unknown record '" + std::string(t[0].text) + "'", no, t[0].column);
    }
  });
  return g;
}

PatternGraph parse_pattern(std::string_view text, LabelTable& labels) {
  PatternGraph p;
  for_each_line(text, [&](std::string_view line, int no) {
    auto t = tokenize(line);
    if (t.empty()) return;
    if (t[0].text == "pnode") {
      if (t.size() < 3) expect_args(t, 3, no);
      Interval cap;
      if (t.size() > 3) cap = parse_interval(join_from(t, 3), no, t[3].column);
      LabelId l = labels.intern(t[2].text);
      at(no, t[1].column, [&] { p.add_node(std::string(t[1].text), l, cap); });
    } else if (t[0].text == "pedge") {
      expect_args(t, 3, no);
      PNodeId a = p.find(t[1].text), b = p.find(t[2].text);
      if (a == kNoNode) throw Error(ErrorKind::kUnknownNode, "unknown pattern node '" + std::string(t[1].text) + "'", no, t[1].column);
      if (b == kNoNode) throw Error(ErrorKind::kUnknownNode, "unknown pattern node '" + std::string(t[2].text) + "'", no, t[2].column);
      at(no, t[1].column, [&] { p.add_edge(a, b); });
    } else {
      parse_fail("unknown record '" + std::string(t[0].text) + "'", no, t[0].column);
    }
  });
  p.require_connected();
  return p;
}

bool is_pattern_update_line(std::string_view line) {
  auto t = tokenize(strip_comment(line));
  return !t.empty() && t[0].text.size() > 1 && t[0].text[0] == 'p';
}

namespace {

// key=value arguments after the positional ones.
struct KeyArgs {
  std::vector<std::pair<std::string_view, Token>> kv;

  const Token* get(std::string_view key) const {
    for (const auto& [k, v] : kv)
      if (k == key) return &v;
    return nullptr;
  }
};

KeyArgs key_args(const std::vector<Token>& t, std::size_t from, int line) {
  KeyArgs out;
  for (std::size_t i = from; i < t.size(); ++i) {
    auto eq = t[i].text.find('=');
    if (eq == std::string_view::npos || eq == 0)
      parse_fail("expected key=value, got '" + std::string(t[i].text) + "'", line, t[i].column);
    Token v{t[i].text.substr(eq + 1), t[i].column + static_cast<int>(eq) + 1};
    out.kv.emplace_back(t[i].text.substr(0, eq), v);
  }
  return out;
}

const Token& require_key(const KeyArgs& a, std::string_view key, int line, int column) {
  const Token* t = a.get(key);
  if (!t) parse_fail("missing " + std::string(key) + "=", line, column);
  return *t;
}

}  // namespace

PatternUpdate parse_pattern_update(std::string_view raw, int no) {
  auto t = tokenize(strip_comment(raw));
  if (t.empty()) parse_fail("empty update", no, 1);
  PatternUpdate u;
  std::string_view op = t[0].text;
  if (op == "p+edge" || op == "p-edge") {
    expect_args(t, 3, no);
    u.kind = op == "p+edge" ? UpdateKind::kPatEdgeIns : UpdateKind::kPatEdgeDel;
    u.a = t[1].text;
    u.b = t[2].text;
  } else if (op == "p-node") {
    expect_args(t, 2, no);
    u.kind = UpdateKind::kPatNodeDel;
    u.a = t[1].text;
  } else if (op == "p.cap") {
    if (t.size() < 3) expect_args(t, 3, no);
    u.kind = UpdateKind::kPatCap;
    u.a = t[1].text;
    u.cap = parse_interval(join_from(t, 2), no, t[2].column);
  } else if (op == "p+node") {
    if (t.size() < 2) expect_args(t, 2, no);
    u.kind = UpdateKind::kPatNodeIns;
    u.a = t[1].text;
    KeyArgs args = key_args(t, 2, no);
    int end = t.back().column + static_cast<int>(t.back().text.size());
    u.b = std::string(require_key(args, "anchor", no, end).text);
    u.label = std::string(require_key(args, "label", no, end).text);
    if (u.label.empty()) parse_fail("empty label", no, end);
    if (const Token* c = args.get("cap")) u.cap = parse_interval(c->text, no, c->column);
  } else {
    parse_fail("unknown pattern update '" + std::string(op) + "'", no, t[0].column);
  }
  return u;
}

DataUpdate parse_data_update(std::string_view raw, int no) {
  auto t = tokenize(strip_comment(raw));
  if (t.empty()) parse_fail("empty update", no, 1);
  DataUpdate u;
  std::string_view op = t[0].text;
  if (op == "g+edge" || op == "g-edge") {
    expect_args(t, 3, no);
    u.kind = op == "g+edge" ? UpdateKind::kDataEdgeIns : UpdateKind::kDataEdgeDel;
    u.a = t[1].text;
    u.b = t[2].text;
  } else if (op == "g-node") {
    expect_args(t, 2, no);
    u.kind = UpdateKind::kDataNodeDel;
    u.a = t[1].text;
  } else if (op == "g+node") {
    if (t.size() < 2) expect_args(t, 2, no);
    u.kind = UpdateKind::kDataNodeIns;
    u.a = t[1].text;
    KeyArgs args = key_args(t, 2, no);
    int end = t.back().column + static_cast<int>(t.back().text.size());
    u.b = std::string(require_key(args, "anchor", no, end).text);
    const Token* ls = args.get("labels");
    if (!ls) ls = args.get("label");
    if (!ls) parse_fail("missing labels=", no, end);
    u.labels = split_labels(ls->text, no, ls->column);
  } else {
    parse_fail("unknown data update '" + std::string(op) + "'", no, t[0].column);
  }
  return u;
}

void parse_update_into(std::string_view line, int no, UpdateSet& set) {
  auto t = tokenize(strip_comment(line));
  if (t.empty()) return;
  if (t[0].text.rfind("p", 0) == 0)
    set.pattern.push_back(parse_pattern_update(line, no));
  else if (t[0].text.rfind("g", 0) == 0)
    set.data.push_back(parse_data_update(line, no));
  else
    parse_fail("unknown update '" + std::string(t[0].text) + "'", no, t[0].column);
}

std::vector<UpdateSet> parse_updates(std::string_view text) {
  std::vector<UpdateSet> sets(1);
  for_each_line(text, [&](std::string_view line, int no) {
    auto t = tokenize(line);
    if (t.empty()) return;
    if (t[0].text == "---") {
      if (t.size() > 1) parse_fail("unexpected token after '---'", no, t[1].column);
      sets.emplace_back();
      return;
    }
    parse_update_into(line, no, sets.back());
  });
  if (sets.back().empty()) sets.pop_back();
  return sets;
}

std::string PatternUpdate::str() const {
  switch (kind) {
    case UpdateKind::kPatEdgeIns: return "p+edge " + a + " " + b;
    case UpdateKind::kPatEdgeDel: return "p-edge " + a + " " + b;
    case UpdateKind::kPatNodeIns: return "p+node " + a + " anchor=" + b + " label=" + label + " cap=" + cap.str();
    case UpdateKind::kPatNodeDel: return "p-node " + a;
    case UpdateKind::kPatCap: return "p.cap " + a + " " + cap.str();
    default: return "?";
  }
}

std::string DataUpdate::str() const {
  switch (kind) {
    case UpdateKind::kDataEdgeIns: return "g+edge " + a + " " + b;
    case UpdateKind::kDataEdgeDel: return "g-edge " + a + " " + b;
    case UpdateKind::kDataNodeIns: {
      std::string s = "g+node " + a + " anchor=" + b + " labels=";
      for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
      return s;
    }
    case UpdateKind::kDataNodeDel: return "g-node " + a;
    default: return "?";
  }
}

bool is_pattern_kind(UpdateKind k) {
  return k == UpdateKind::kPatEdgeIns || k == UpdateKind::kPatEdgeDel || k == UpdateKind::kPatNodeIns ||
         k == UpdateKind::kPatNodeDel || k == UpdateKind::kPatCap;
}

bool is_deletion(UpdateKind k) {
  return k == UpdateKind::kPatEdgeDel || k == UpdateKind::kPatNodeDel || k == UpdateKind::kDataEdgeDel ||
         k == UpdateKind::kDataNodeDel;
}

std::string serialize_graph(const DataGraph& g, const LabelTable& labels) {
  std::string out;
  for (NodeId v = 0; v < g.id_bound(); ++v) {
    if (!g.alive(v)) continue;
    out += "node " + g.name(v) + " ";
    const auto& ls = g.labels(v);
    for (std::size_t i = 0; i < ls.size(); ++i) out += (i ? "," : "") + labels.name(ls[i]);
    out += "\n";
  }
  for (auto [a, b] : g.edges()) out += "edge " + g.name(a) + " " + g.name(b) + "\n";
  return out;
}

std::string serialize_pattern(const PatternGraph& p, const LabelTable& labels) {
  std::string out;
  for (PNodeId u : p.nodes())
    out += "pnode " + p.name(u) + " " + labels.name(p.label(u)) + " " + p.capacity(u).str() + "\n";
  for (auto [a, b] : p.edges()) out += "pedge " + p.name(a) + " " + p.name(b) + "\n";
  return out;
}

std::string serialize_updates(const std::vector<UpdateSet>& sets) {
  std::string out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += "---\n";
    for (const auto& u : sets[i].pattern) out += u.str() + "\n";
    for (const auto& u : sets[i].data) out += u.str() + "\n";
  }
  // A trailing empty set needs its own separator to survive parsing.
  if (!sets.empty() && sets.back().empty()) out += "---\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

DataGraph gen_planted(const GenParams& prm, LabelTable& labels) {
  std::mt19937_64 rng(prm.seed);
  DataGraph g;
  const std::size_t n = prm.n;
  const std::size_t comms = std::max<std::size_t>(1, std::min(prm.communities, std::max<std::size_t>(n, 1)));
  const std::size_t nl = std::max<std::size_t>(1, prm.labels);
  auto community = [&](std::size_t i) { return i * comms / std::max<std::size_t>(n, 1); };
  auto comm_begin = [&](std::size_t c) { return (c * n + comms - 1) / comms; };
  std::vector<LabelId> label_ids;
  for (std::size_t i = 0; i < nl; ++i) label_ids.push_back(labels.intern("L" + std::to_string(i)));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = community(i);
    std::size_t band_lo = c * nl / comms, band_hi = std::max(band_lo + 1, (c + 1) * nl / comms);
    std::size_t l = coin(rng) < 0.8 ? band_lo + rng() % (band_hi - band_lo) : rng() % nl;
    std::vector<LabelId> ls{label_ids[l]};
    if (coin(rng) < 0.05) ls.push_back(label_ids[rng() % nl]);
    g.add_node(std::to_string(i), ls);
  }
  if (n < 2) return g;
  const std::size_t target = static_cast<std::size_t>(double(n) * prm.d / 2.0 + 0.5);
  const double total = prm.intra_prob + prm.inter_prob;
  if (total <= 0) return g;
  const double p_intra = prm.intra_prob / total;
  std::size_t attempts = 0, limit = 50 * target + 1000;
  while (g.num_edges() < target && attempts++ < limit) {
    NodeId a = static_cast<NodeId>(rng() % n);
    std::size_t c = community(a);
    NodeId b;
    if (coin(rng) < p_intra) {
      std::size_t lo = comm_begin(c), hi = comm_begin(c + 1);
      if (hi - lo < 2) continue;
      b = static_cast<NodeId>(lo + rng() % (hi - lo));
    } else {
      if (comms < 2) continue;
      b = static_cast<NodeId>(rng() % n);
      if (community(b) == c) continue;
    }
    if (a == b || g.has_edge(a, b)) continue;
    g.add_edge(a, b);
  }
  return g;
}

PatternGraph gen_pattern_from(const DataGraph& g, const LabelTable& labels, LabelTable& out_labels,
                              std::size_t nodes, std::size_t extra_edges, Interval cap, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NodeId> alive;
  for (NodeId v = 0; v < g.id_bound(); ++v)
    if (g.alive(v) && !g.neighbors(v).empty()) alive.push_back(v);
  if (alive.empty()) throw Error(ErrorKind::kInvalidUpdate, "graph has no edges to sample a pattern from");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    NodeId start = alive[rng() % alive.size()];
    std::vector<NodeId> picked{start};
    std::vector<std::pair<std::size_t, std::size_t>> tree;
    while (picked.size() < nodes) {
      std::vector<std::pair<std::size_t, NodeId>> frontier;
      for (std::size_t i = 0; i < picked.size(); ++i)
        for (NodeId w : g.neighbors(picked[i]))
          if (std::find(picked.begin(), picked.end(), w) == picked.end()) frontier.emplace_back(i, w);
      if (frontier.empty()) break;
      auto [from, w] = frontier[rng() % frontier.size()];
      tree.emplace_back(from, picked.size());
      picked.push_back(w);
    }
    if (picked.size() < nodes) continue;
    PatternGraph p;
    for (std::size_t i = 0; i < picked.size(); ++i)
      p.add_node("u" + std::to_string(i + 1), out_labels.intern(labels.name(g.labels(picked[i]).front())), cap);
    for (auto [a, b] : tree) p.add_edge(static_cast<PNodeId>(a), static_cast<PNodeId>(b));
    std::size_t added = 0;
    for (std::size_t i = 0; i < picked.size() && added < extra_edges; ++i)
      for (std::size_t j = i + 1; j < picked.size() && added < extra_edges; ++j)
        if (g.has_edge(picked[i], picked[j]) && !p.has_edge(PNodeId(i), PNodeId(j))) {
          p.add_edge(PNodeId(i), PNodeId(j));
          ++added;
        }
    return p;
  }
  throw Error(ErrorKind::kInvalidUpdate, "could not sample a connected pattern of the requested size");
}

}  // namespace teamsim
