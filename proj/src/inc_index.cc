#include "teamsim/inc_index.h"

#include <cstring>
#include <istream>
#include <ostream>

#include "teamsim/io.h"
#include "teamsim/simulation.h"

namespace teamsim {

std::string type_code_str(TypeCode tc, std::size_t h) {
  std::string s = "(";
  for (std::size_t i = 0; i < h; ++i) {
    if (i) s += ",";
    s += (tc >> i) & 1 ? "1" : "0";
  }
  return s + ")";
}

UpdateId UpdatePlanner::record(int target, PatternUpdate unit, bool derived) {
  std::size_t s = target == kCut ? stacks_.size() - 1 : static_cast<std::size_t>(target);
  stacks_[s].push_back(PlannedUpdate{++next_id_, std::move(unit), derived});
  return next_id_;
}

std::vector<const PlannedUpdate*> UpdatePlanner::pending_for(std::size_t frag, UpdateId cflag) const {
  std::vector<const PlannedUpdate*> out;
  const auto& st = stacks_[frag];
  auto it = std::upper_bound(st.begin(), st.end(), cflag,
                             [](UpdateId c, const PlannedUpdate& e) { return c < e.id; });
  for (; it != st.end(); ++it) out.push_back(&*it);
  return out;
}

void BallFilter::apply_deletion(std::size_t frag) {
  for (auto& c : codes_) c &= ~(TypeCode{1} << frag);
}

FbmIndex::FbmIndex(std::size_t h, Hop r)
    : h_(h), r_(r), buckets_(std::size_t{1} << h), bf_(h), up_(h) {}

void FbmIndex::ensure(NodeId v) {
  if (status_.size() <= v) {
    status_.resize(v + 1);
    code_.resize(v + 1, 0);
    pos_.resize(v + 1, 0);
    rel_.resize(v + 1);
  }
}

std::vector<NodeId> FbmIndex::fbm_lookup_bucket(TypeCode tc) const {
  std::vector<NodeId> out = buckets_[tc];
  std::sort(out.begin(), out.end());
  return out;
}

void FbmIndex::set_relation(NodeId v, std::size_t frag, MatchRelation m) {
  if (!m.matched) m.sets.clear();
  rel_[v][frag] = std::move(m);
}

void FbmIndex::add_ball(NodeId v, UpdateId cflag) {
  ensure(v);
  if (status_[v].alive) remove_ball(v);
  status_[v] = BallStatus{};
  status_[v].alive = true;
  status_[v].cflag = cflag;
  rel_[v].assign(h_, MatchRelation{});
  code_[v] = 0;
  pos_[v] = static_cast<std::uint32_t>(buckets_[0].size());
  buckets_[0].push_back(v);
  ++num_balls_;
}

void FbmIndex::remove_ball(NodeId v) {
  if (!has_ball(v)) return;
  auto& b = buckets_[code_[v]];
  NodeId last = b.back();
  b[pos_[v]] = last;
  pos_[last] = pos_[v];
  b.pop_back();
  status_[v] = BallStatus{};
  rel_[v].clear();
  rel_[v].shrink_to_fit();
  --num_balls_;
}

TypeCode vacuous_fragments(const Fragmentation& frag) {
  TypeCode mask = 0;
  auto parts = frag.fragments();
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].empty()) mask |= TypeCode{1} << i;
  return mask;
}

void FbmIndex::fbm_relink(NodeId v, UpdateId cflag, const Fragmentation& frag) {
  fbm_relink(v, cflag, vacuous_fragments(frag));
}

void FbmIndex::fbm_relink(NodeId v, UpdateId cflag, TypeCode vacuous) {
  TypeCode tc = vacuous;
  for (std::size_t i = 0; i < h_; ++i)
    if (rel_[v][i].matched) tc |= TypeCode{1} << i;
  if (tc != code_[v]) {
    auto& from = buckets_[code_[v]];
    NodeId last = from.back();
    from[pos_[v]] = last;
    pos_[last] = pos_[v];
    from.pop_back();
    code_[v] = tc;
    pos_[v] = static_cast<std::uint32_t>(buckets_[tc].size());
    buckets_[tc].push_back(v);
  }
  status_[v].cflag = cflag;
}

std::vector<NodeId> FbmIndex::idaball() {
  std::vector<NodeId> out;
  for (TypeCode j = 0; j < buckets_.size(); ++j) {
    TypeCode fc = bf_.code(j);
    if ((j & fc) != fc) continue;
    out.insert(out.end(), buckets_[j].begin(), buckets_[j].end());
    bf_.reset(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MatchRelation fragment_relation(const PatternGraph& p, const std::vector<PNodeId>& frag_nodes, const Ball& ball,
                                const DataGraph& g) {
  if (frag_nodes.empty()) return MatchRelation{};
  PatternView view = PatternView::induced(p, frag_nodes);
  LocalRelation rel = undirg_sim(view, ball, g);
  return to_global(view, ball, rel);
}

FbmIndex build_index_unchecked(const PatternGraph& p, const Fragmentation& frag, const DataGraph& g, Hop r) {
  FbmIndex idx(frag.h(), r);
  auto parts = frag.fragments();
  TypeCode vacuous = vacuous_fragments(frag);
  BallExtractor ex(g);
  for (NodeId v = 0; v < g.id_bound(); ++v) {
    if (!g.alive(v)) continue;
    idx.add_ball(v, 0);
    Ball ball = ex.extract(v, r);
    idx.status(v).den = density_bound(max_core_density(ball));
    idx.status(v).den_valid = true;
    for (std::size_t i = 0; i < parts.size(); ++i) idx.set_relation(v, i, fragment_relation(p, parts[i], ball, g));
    idx.fbm_relink(v, 0, vacuous);
  }
  return idx;
}

FbmIndex build_index(const PatternGraph& p, const Fragmentation& frag, const DataGraph& g, Hop r) {
  if (!pattern_satisfiable(p)) throw Error(ErrorKind::kUnsatisfiablePattern, "pattern admits no team simulation");
  return build_index_unchecked(p, frag, g, r);
}

// ---------------------------------------------------------------------------
// Snapshot

namespace {

constexpr std::uint32_t kVersion = 1;

void put_u8(std::ostream& o, std::uint8_t x) { o.put(static_cast<char>(x)); }
void put_u32(std::ostream& o, std::uint32_t x) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
  o.write(reinterpret_cast<const char*>(b), 4);
}
void put_u64(std::ostream& o, std::uint64_t x) {
  put_u32(o, static_cast<std::uint32_t>(x));
  put_u32(o, static_cast<std::uint32_t>(x >> 32));
}
void put_tag(std::ostream& o, const char* tag) {
  char t[4] = {0, 0, 0, 0};
  std::memcpy(t, tag, std::strlen(tag));
  o.write(t, 4);
}
void put_str(std::ostream& o, const std::string& s) {
  put_u32(o, static_cast<std::uint32_t>(s.size()));
  o.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void need(std::istream& in) {
  if (!in) throw Error(ErrorKind::kIo, "truncated snapshot");
}
std::uint8_t get_u8(std::istream& in) {
  int c = in.get();
  need(in);
  return static_cast<std::uint8_t>(c);
}
std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  need(in);
  return b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t(b[3]) << 24);
}
std::uint64_t get_u64(std::istream& in) {
  std::uint64_t lo = get_u32(in);
  return lo | (std::uint64_t(get_u32(in)) << 32);
}
void expect_tag(std::istream& in, const char* tag) {
  char t[4];
  in.read(t, 4);
  need(in);
  char want[4] = {0, 0, 0, 0};
  std::memcpy(want, tag, std::strlen(tag));
  if (std::memcmp(t, want, 4) != 0) throw Error(ErrorKind::kIo, std::string("snapshot: expected section ") + tag);
}
std::string get_str(std::istream& in) {
  std::uint32_t n = get_u32(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  need(in);
  return s;
}

}  // namespace

void FbmIndex::save(std::ostream& out) const {
  out.write("TSIX", 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(h_));
  put_u32(out, r_);
  put_u32(out, static_cast<std::uint32_t>(status_.size()));

  put_tag(out, "FS");
  put_u32(out, static_cast<std::uint32_t>(buckets_.size()));
  for (TypeCode j = 0; j < buckets_.size(); ++j) {
    auto members = fbm_lookup_bucket(j);
    put_u32(out, j);
    put_u32(out, static_cast<std::uint32_t>(members.size()));
    for (NodeId v : members) put_u32(out, v);
  }

  put_tag(out, "BS");
  put_u32(out, static_cast<std::uint32_t>(num_balls_));
  for (NodeId v = 0; v < status_.size(); ++v) {
    if (!status_[v].alive) continue;
    put_u32(out, v);
    put_u64(out, status_[v].cflag);
    put_u64(out, status_[v].den.edges);
    put_u64(out, status_[v].den.nodes);
    put_u8(out, status_[v].den_valid ? 1 : 0);
  }

  put_tag(out, "M");
  std::uint32_t entries = 0;
  for (NodeId v = 0; v < status_.size(); ++v)
    if (status_[v].alive)
      for (const auto& m : rel_[v]) entries += m.matched ? 1 : 0;
  put_u32(out, entries);
  for (NodeId v = 0; v < status_.size(); ++v) {
    if (!status_[v].alive) continue;
    for (std::uint32_t i = 0; i < rel_[v].size(); ++i) {
      const auto& m = rel_[v][i];
      if (!m.matched) continue;
      put_u32(out, v);
      put_u32(out, i);
      put_u32(out, static_cast<std::uint32_t>(m.sets.size()));
      for (const auto& [u, s] : m.sets) {
        put_u32(out, u);
        put_u32(out, static_cast<std::uint32_t>(s.size()));
        for (NodeId x : s) put_u32(out, x);
      }
    }
  }

  put_tag(out, "BF");
  put_u32(out, static_cast<std::uint32_t>(bf_.codes().size()));
  for (TypeCode c : bf_.codes()) put_u32(out, c);

  put_tag(out, "UP");
  put_u64(out, up_.latest());
  put_u32(out, static_cast<std::uint32_t>(up_.stacks().size()));
  for (const auto& st : up_.stacks()) {
    put_u32(out, static_cast<std::uint32_t>(st.size()));
    for (const auto& e : st) {
      put_u64(out, e.id);
      put_u8(out, e.derived ? 1 : 0);
      put_str(out, e.unit.str());
    }
  }
}

FbmIndex FbmIndex::load(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  need(in);
  if (std::memcmp(magic, "TSIX", 4) != 0) throw Error(ErrorKind::kIo, "not a TSIX snapshot");
  if (get_u32(in) != kVersion) throw Error(ErrorKind::kIo, "unsupported snapshot version");
  std::size_t h = get_u32(in);
  Hop r = get_u32(in);
  std::uint32_t slots = get_u32(in);
  if (h < 1 || h > 16) throw Error(ErrorKind::kIo, "snapshot: bad h");
  FbmIndex idx(h, r);
  if (slots) idx.ensure(slots - 1);

  expect_tag(in, "FS");
  std::uint32_t nb = get_u32(in);
  if (nb != idx.buckets_.size()) throw Error(ErrorKind::kIo, "snapshot: bucket count mismatch");
  for (std::uint32_t b = 0; b < nb; ++b) {
    TypeCode j = get_u32(in);
    std::uint32_t n = get_u32(in);
    if (j >= nb) throw Error(ErrorKind::kIo, "snapshot: bad type code");
    for (std::uint32_t k = 0; k < n; ++k) {
      NodeId v = get_u32(in);
      idx.ensure(v);
      idx.code_[v] = j;
      idx.pos_[v] = static_cast<std::uint32_t>(idx.buckets_[j].size());
      idx.buckets_[j].push_back(v);
    }
  }

  expect_tag(in, "BS");
  std::uint32_t nballs = get_u32(in);
  for (std::uint32_t k = 0; k < nballs; ++k) {
    NodeId v = get_u32(in);
    idx.ensure(v);
    auto& st = idx.status_[v];
    st.alive = true;
    st.cflag = get_u64(in);
    st.den.edges = get_u64(in);
    st.den.nodes = get_u64(in);
    st.den_valid = get_u8(in) != 0;
    idx.rel_[v].assign(h, MatchRelation{});
  }
  idx.num_balls_ = nballs;

  expect_tag(in, "M");
  std::uint32_t entries = get_u32(in);
  for (std::uint32_t k = 0; k < entries; ++k) {
    NodeId v = get_u32(in);
    std::uint32_t frag = get_u32(in);
    if (!idx.has_ball(v) || frag >= h) throw Error(ErrorKind::kIo, "snapshot: bad relation entry");
    MatchRelation m;
    m.matched = true;
    std::uint32_t np = get_u32(in);
    for (std::uint32_t a = 0; a < np; ++a) {
      PNodeId u = get_u32(in);
      std::uint32_t n = get_u32(in);
      std::vector<NodeId> s(n);
      for (auto& x : s) x = get_u32(in);
      m.sets.emplace_back(u, std::move(s));
    }
    idx.rel_[v][frag] = std::move(m);
  }

  expect_tag(in, "BF");
  std::uint32_t nc = get_u32(in);
  if (nc != idx.bf_.codes_.size()) throw Error(ErrorKind::kIo, "snapshot: filter size mismatch");
  for (auto& c : idx.bf_.codes_) c = get_u32(in);

  expect_tag(in, "UP");
  idx.up_.next_id_ = get_u64(in);
  std::uint32_t ns = get_u32(in);
  if (ns != h + 1) throw Error(ErrorKind::kIo, "snapshot: stack count mismatch");
  for (auto& st : idx.up_.stacks_) {
    std::uint32_t n = get_u32(in);
    for (std::uint32_t k = 0; k < n; ++k) {
      PlannedUpdate e;
      e.id = get_u64(in);
      e.derived = get_u8(in) != 0;
      e.unit = parse_pattern_update(get_str(in));
      st.push_back(std::move(e));
    }
  }
  return idx;
}

bool FbmIndex::same_state(const FbmIndex& o) const {
  if (h_ != o.h_ || r_ != o.r_ || num_balls_ != o.num_balls_) return false;
  if (bf_.codes() != o.bf_.codes() || up_.latest() != o.up_.latest()) return false;
  for (TypeCode j = 0; j < buckets_.size(); ++j)
    if (fbm_lookup_bucket(j) != o.fbm_lookup_bucket(j)) return false;
  for (NodeId v = 0; v < std::max(status_.size(), o.status_.size()); ++v) {
    bool a = has_ball(v), b = o.has_ball(v);
    if (a != b) return false;
    if (!a) continue;
    const auto& x = status_[v];
    const auto& y = o.status_[v];
    if (x.cflag != y.cflag || x.den_valid != y.den_valid) return false;
    if (x.den_valid && !x.den.identical(y.den)) return false;
    if (rel_[v] != o.rel_[v]) return false;
  }
  for (std::size_t s = 0; s < up_.stacks().size(); ++s) {
    const auto& a = up_.stacks()[s];
    const auto& b = o.up_.stacks()[s];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].id != b[i].id || a[i].derived != b[i].derived || a[i].unit.str() != b[i].unit.str()) return false;
  }
  return true;
}

void FbmIndex::dump(std::ostream& out, const DataGraph& g, const PatternGraph& p) const {
  out << "index h=" << h_ << " r=" << r_ << " balls=" << num_balls_ << " last_update=" << up_.latest() << "\n";
  for (TypeCode j = 0; j < buckets_.size(); ++j) {
    out << "bucket " << type_code_str(j, h_) << " fc=" << type_code_str(bf_.code(j), h_) << " size="
        << buckets_[j].size() << "\n";
  }
  for (NodeId v = 0; v < status_.size(); ++v) {
    if (!status_[v].alive) continue;
    const auto& st = status_[v];
    out << "ball " << g.name(v) << " tc=" << type_code_str(code_[v], h_) << " cflag=" << st.cflag << " den="
        << (st.den_valid ? st.den.str() : std::string("stale")) << "\n";
    for (std::size_t i = 0; i < h_; ++i) {
      const auto& m = rel_[v][i];
      if (!m.matched) continue;
      out << "  F" << (i + 1) << ":";
      for (const auto& [u, s] : m.sets) {
        out << " " << p.name(u) << "={";
        for (std::size_t k = 0; k < s.size(); ++k) out << (k ? "," : "") << g.name(s[k]);
        out << "}";
      }
      out << "\n";
    }
  }
  for (std::size_t s = 0; s < up_.stacks().size(); ++s) {
    out << (s + 1 == up_.stacks().size() ? std::string("T(C)") : "T" + std::to_string(s + 1)) << ":";
    for (const auto& e : up_.stacks()[s]) out << " #" << e.id << " " << e.unit.str() << (e.derived ? " (derived)" : "");
    out << "\n";
  }
}

}  // namespace teamsim
