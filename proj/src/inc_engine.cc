#include "teamsim/inc_engine.h"

#include <algorithm>
#include <chrono>

namespace teamsim {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

void apply_pattern_update(PatternGraph& p, const PatternUpdate& u, LabelTable& labels) {
  switch (u.kind) {
    case UpdateKind::kPatEdgeIns: p.add_edge(p.require(u.a), p.require(u.b)); break;
    case UpdateKind::kPatEdgeDel: p.remove_edge(p.require(u.a), p.require(u.b)); break;
    case UpdateKind::kPatNodeIns: {
      PNodeId anchor = p.require(u.b);
      PNodeId id = p.add_node(u.a, labels.intern(u.label), u.cap);
      p.add_edge(id, anchor);
      break;
    }
    case UpdateKind::kPatNodeDel: p.remove_node(p.require(u.a)); break;
    case UpdateKind::kPatCap: p.set_capacity(p.require(u.a), u.cap); break;
    default: throw Error(ErrorKind::kInvalidUpdate, "not a pattern update");
  }
}

void apply_data_update(DataGraph& g, const DataUpdate& u, LabelTable& labels) {
  switch (u.kind) {
    case UpdateKind::kDataEdgeIns: g.add_edge(g.require(u.a), g.require(u.b)); break;
    case UpdateKind::kDataEdgeDel: g.remove_edge(g.require(u.a), g.require(u.b)); break;
    case UpdateKind::kDataNodeIns: {
      NodeId anchor = g.require(u.b);
      std::vector<LabelId> ls;
      for (const auto& l : u.labels) ls.push_back(labels.intern(l));
      NodeId w = g.add_node(u.a, ls);
      g.add_edge(w, anchor);
      break;
    }
    case UpdateKind::kDataNodeDel: g.remove_node(g.require(u.a)); break;
    default: throw Error(ErrorKind::kInvalidUpdate, "not a data update");
  }
}

struct Session::Context {
  UpdateStats st;
  UpdateId latest = 0;
  TypeCode vacuous = 0;
  std::vector<std::vector<PNodeId>> frags;
  std::vector<PatternView> views;
  PatternView whole;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cut;
  std::vector<char> in_affected;
};

Session::Session(LabelTable labels, DataGraph g, PatternGraph p, SessionConfig cfg)
    : labels_(std::move(labels)), g_(std::move(g)), p_(std::move(p)), cfg_(cfg), ex_(g_) {
  p_.require_connected();
  initialize();
}

BatchOptions Session::batch_options() const {
  BatchOptions o;
  o.r = cfg_.r;
  o.k = cfg_.k;
  o.filter = cfg_.filter;
  o.threads = cfg_.threads;
  return o;
}

void Session::refresh_relevance() {
  relevant_.assign(labels_.size(), 0);
  for (LabelId l : p_.label_set()) relevant_[l] = 1;
}

void Session::initialize() {
  std::size_t h = std::clamp<std::size_t>(cfg_.h, 1, p_.num_nodes());
  frag_ = pfrag(p_, h);
  refresh_relevance();
  idx_ = build_index_unchecked(p_, frag_, g_, cfg_.r);
  BatchResult b = batch_run(p_, g_, batch_options());
  current_ = QueryResult{};
  current_.satisfiable = b.satisfiable;
  current_.topk = std::move(b.topk);
}

void Session::rebuild() {
  initialize();
  ++counters_.rebuilds;
}

QueryResult Session::dynamic_p(const std::vector<PatternUpdate>& dp) {
  UpdateSet s;
  s.pattern = dp;
  return apply(s);
}

QueryResult Session::dynamic_g(const std::vector<DataUpdate>& dg) {
  UpdateSet s;
  s.data = dg;
  return apply(s);
}

PatternGraph Session::checked_pattern(const std::vector<PatternUpdate>& dp) {
  PatternGraph copy = p_;
  for (const auto& u : dp) apply_pattern_update(copy, u, labels_);
  copy.require_connected();
  return copy;
}

void Session::apply_data(const std::vector<DataUpdate>& dg, std::vector<NodeId>& structural,
                         std::vector<char>& mark) {
  struct Undo {
    UpdateKind kind;
    NodeId a, b;
    std::vector<NodeId> nbrs;
    std::vector<LabelId> labels;
  };
  std::vector<Undo> log;
  std::vector<char> seen;
  auto grow = [&] {
    if (mark.size() < g_.id_bound()) mark.resize(g_.id_bound(), 0);
    if (seen.size() < g_.id_bound()) seen.resize(g_.id_bound(), 0);
  };
  auto add = [&](NodeId v) {
    if (!mark[v]) {
      mark[v] = 1;
      structural.push_back(v);
    }
  };
  auto within_both = [&](NodeId a, NodeId b) {
    grow();
    std::vector<NodeId> first = ex_.within(a, cfg_.r);
    for (NodeId v : first) seen[v] = 1;
    for (NodeId v : ex_.within(b, cfg_.r))
      if (seen[v]) add(v);
    for (NodeId v : first) seen[v] = 0;
  };
  auto within_one = [&](NodeId w) {
    grow();
    for (NodeId v : ex_.within(w, cfg_.r)) add(v);
  };
  try {
    for (const auto& u : dg) {
      switch (u.kind) {
        case UpdateKind::kDataEdgeIns: {
          NodeId a = g_.require(u.a), b = g_.require(u.b);
          g_.add_edge(a, b);
          log.push_back({u.kind, a, b, {}, {}});
          within_both(a, b);
          break;
        }
        case UpdateKind::kDataEdgeDel: {
          NodeId a = g_.require(u.a), b = g_.require(u.b);
          if (!g_.has_edge(a, b)) throw Error(ErrorKind::kInvalidUpdate, "edge (" + u.a + "," + u.b + ") does not exist");
          within_both(a, b);
          g_.remove_edge(a, b);
          log.push_back({u.kind, a, b, {}, {}});
          break;
        }
        case UpdateKind::kDataNodeIns: {
          NodeId anchor = g_.require(u.b);
          std::vector<LabelId> ls;
          for (const auto& l : u.labels) ls.push_back(labels_.intern(l));
          NodeId w = g_.add_node(u.a, ls);
          g_.add_edge(w, anchor);
          log.push_back({u.kind, w, anchor, {}, {}});
          within_one(w);
          break;
        }
        case UpdateKind::kDataNodeDel: {
          NodeId w = g_.require(u.a);
          within_one(w);
          std::vector<LabelId> ls = g_.labels(w);
          std::vector<NodeId> nbrs = g_.remove_node(w);
          log.push_back({u.kind, w, kNoNode, std::move(nbrs), std::move(ls)});
          break;
        }
        default: throw Error(ErrorKind::kInvalidUpdate, "not a data update");
      }
    }
  } catch (...) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
      switch (it->kind) {
        case UpdateKind::kDataEdgeIns: g_.remove_edge(it->a, it->b); break;
        case UpdateKind::kDataEdgeDel: g_.add_edge(it->a, it->b); break;
        case UpdateKind::kDataNodeIns: g_.remove_node(it->a); break;
        case UpdateKind::kDataNodeDel:
          g_.add_node(g_.name(it->a), it->labels);
          for (NodeId x : it->nbrs) g_.add_edge(it->a, x);
          break;
        default: break;
      }
    }
    throw;
  }
}

void Session::commit_pattern(const std::vector<PatternUpdate>& dp) {
  auto& up = idx_.planner();
  for (const auto& u : dp) {
    Classification c = classify_update(u, p_, frag_);
    apply_pattern_update(p_, u, labels_);
    up.record(c.target, u);
    if (is_deletion(u.kind) && c.target != kCut) idx_.filter().apply_deletion(static_cast<std::size_t>(c.target));
    for (auto [a, b] : c.severed_cut) {
      PatternUpdate d;
      d.kind = UpdateKind::kPatEdgeDel;
      d.a = p_.name(a);
      d.b = p_.name(b);
      up.record(kCut, d, true);
    }
  }
}

void Session::ensure_den(NodeId v, UpdateStats& st) {
  auto& s = idx_.status(v);
  if (s.den_valid) return;
  Ball full = ex_.extract(v, cfg_.r);
  s.den = density_bound(max_core_density(full));
  s.den_valid = true;
  ++st.den_recomputed;
}

std::optional<Ball> Session::reconcile(NodeId v, Context& ctx) {
  std::optional<Ball> ball;
  const UpdateId cflag = idx_.status(v).cflag;
  for (std::size_t i = 0; i < ctx.frags.size(); ++i) {
    auto pend = idx_.planner().pending_for(i, cflag);
    if (pend.empty()) continue;
    if (ctx.frags[i].empty()) {
      idx_.set_relation(v, i, MatchRelation{});
      continue;
    }
    bool del = std::any_of(pend.begin(), pend.end(), [](const PlannedUpdate* e) { return is_deletion(e->unit.kind); });
    const MatchRelation& old = idx_.relation(v, i);
    if (!del && !old.matched) continue;  // insertions cannot create a match
    if (!ball) {
      ball = ex_.extract_restricted(v, cfg_.r, relevant_);
      ++ctx.st.balls_visited;
      if (!ctx.in_affected[v]) ++ctx.st.visits_outside_affected;
    }
    const PatternView& view = ctx.views[i];
    if (del) {
      idx_.set_relation(v, i, to_global(view, *ball, undirg_sim(view, *ball, g_)));
      ++ctx.st.relations_recomputed;
      continue;
    }
    LocalRelation rel(view.size(), ball->size());
    load_global(view, *ball, old, rel);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> added;
    for (const PlannedUpdate* e : pend) {
      const PatternUpdate& u = e->unit;
      if (u.kind == UpdateKind::kPatNodeIns) {
        std::uint32_t x = view.local(p_.require(u.a));
        for (std::uint32_t w = 0; w < ball->size(); ++w)
          if (g_.has_label(ball->nodes[w], view.labels[x])) rel.add(x, w);
        added.emplace_back(x, view.local(p_.require(u.b)));
      } else if (u.kind == UpdateKind::kPatEdgeIns) {
        added.emplace_back(view.local(p_.require(u.a)), view.local(p_.require(u.b)));
      }
    }
    if (rel.any_empty())
      rel.clear();
    else
      pat_e_ins(view, *ball, rel, added);
    idx_.set_relation(v, i, to_global(view, *ball, rel));
    ++ctx.st.relations_folded;
  }
  idx_.fbm_relink(v, ctx.latest, ctx.vacuous);
  return ball;
}

void Session::combine(NodeId v, std::optional<Ball> ball, Context& ctx, TopKList& out) {
  if (!ball) {
    ball = ex_.extract_restricted(v, cfg_.r, relevant_);
    ++ctx.st.balls_visited;
    if (!ctx.in_affected[v]) ++ctx.st.visits_outside_affected;
  }
  const PatternView& whole = ctx.whole;
  LocalRelation rel(whole.size(), ball->size());
  for (std::size_t i = 0; i < ctx.frags.size(); ++i) load_global(whole, *ball, idx_.relation(v, i), rel);
  if (rel.any_empty()) return;
  ++ctx.st.combines;
  pat_e_ins(whole, *ball, rel, ctx.cut);
  if (rel.empty()) return;
  if (capacity_check(whole, rel)) out.insert(team_from(*ball, rel, cfg_.r));
  for (Hop t = cfg_.r; t-- > 1;) {
    inc_sim_shrink(whole, *ball, rel, t);
    if (rel.empty()) break;
    if (capacity_check(whole, rel)) out.insert(team_from(*ball, rel, t));
  }
}

QueryResult Session::apply(const UpdateSet& set) {
  const auto t0 = Clock::now();
  Context ctx;
  ctx.st.units = set.size();

  std::vector<NodeId> structural;
  std::vector<char> smark;
  try {
    if (!set.pattern.empty()) checked_pattern(set.pattern);
    apply_data(set.data, structural, smark);
  } catch (...) {
    ++counters_.rejected_sets;
    throw;
  }
  if (!set.pattern.empty()) commit_pattern(set.pattern);
  refresh_relevance();
  smark.resize(g_.id_bound(), 0);

  const bool sat = pattern_satisfiable(p_);
  const TypeCode ones = idx_.all_ones();
  ctx.latest = idx_.planner().latest();
  ctx.vacuous = vacuous_fragments(frag_);
  ctx.frags = frag_.fragments();
  for (const auto& f : ctx.frags) ctx.views.push_back(PatternView::induced(p_, f));
  ctx.whole = PatternView::whole(p_);
  for (auto [a, b] : frag_.cut_edges(p_)) ctx.cut.emplace_back(ctx.whole.local(a), ctx.whole.local(b));
  ctx.in_affected.assign(g_.id_bound(), 0);

  // Retire balls of deleted nodes, create balls for new ones.
  std::vector<NodeId> live_structural;
  for (NodeId v : structural) {
    if (!g_.alive(v)) {
      if (idx_.has_ball(v)) {
        idx_.remove_ball(v);
        ++ctx.st.balls_retired;
      }
      continue;
    }
    if (!idx_.has_ball(v)) {
      idx_.add_ball(v, ctx.latest);
      ++ctx.st.balls_created;
    }
    live_structural.push_back(v);
  }

  std::vector<NodeId> affected;
  auto add_affected = [&](NodeId v) {
    if (!ctx.in_affected[v]) {
      ctx.in_affected[v] = 1;
      affected.push_back(v);
    }
  };
  if (!set.pattern.empty()) {
    auto pa = idx_.idaball();
    ctx.st.balls_pattern_affected = pa.size();
    for (NodeId v : pa) add_affected(v);
  }
  for (NodeId v : idx_.bucket(ones)) add_affected(v);
  for (NodeId v : live_structural) add_affected(v);
  ctx.st.balls_structural = live_structural.size();
  ctx.st.balls_affected = affected.size();

  // Structurally affected balls: recompute every fragment against P (+) dP.
  for (NodeId v : live_structural) {
    Ball ball = ex_.extract_restricted(v, cfg_.r, relevant_);
    ++ctx.st.balls_visited;
    if (!ctx.in_affected[v]) ++ctx.st.visits_outside_affected;
    for (std::size_t i = 0; i < ctx.frags.size(); ++i) {
      if (ctx.frags[i].empty()) {
        idx_.set_relation(v, i, MatchRelation{});
        continue;
      }
      idx_.set_relation(v, i, to_global(ctx.views[i], ball, undirg_sim(ctx.views[i], ball, g_)));
      ++ctx.st.relations_recomputed;
    }
    idx_.fbm_relink(v, ctx.latest, ctx.vacuous);
    idx_.status(v).den_valid = false;
  }

  // Rank the remaining candidates by their filter bound.
  std::vector<NodeId> order;
  for (NodeId v : affected) {
    if (smark[v] && (idx_.code(v) != ones || !sat)) continue;
    if (sat) ensure_den(v, ctx.st);
    order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const auto& da = idx_.status(a);
    const auto& db = idx_.status(b);
    if (da.den_valid != db.den_valid) return da.den_valid;
    if (da.den_valid) {
      auto c = da.den <=> db.den;
      if (c != 0) return c > 0;
    }
    return a < b;
  });

  TopKList lk(cfg_.k);
  bool returned = false;
  for (NodeId v : order) {
    if (cfg_.early_return && !returned && idx_.status(v).den_valid &&
        bound_excludes(idx_.status(v).den, lk.kth_density())) {
      returned = true;
      ctx.st.early_returned = true;
      ctx.st.emit_ms = ms_since(t0);
    }
    std::optional<Ball> ball;
    if (!smark[v]) ball = reconcile(v, ctx);
    if (!returned && sat && idx_.code(v) == ones) combine(v, std::move(ball), ctx, lk);
  }
  ctx.st.total_ms = ms_since(t0);
  if (!returned) ctx.st.emit_ms = ctx.st.total_ms;

  std::sort(affected.begin(), affected.end());
  current_ = QueryResult{};
  current_.satisfiable = sat;
  current_.topk = std::move(lk);
  current_.stats = ctx.st;
  current_.affected = std::move(affected);

  ++counters_.update_sets;
  counters_.units += ctx.st.units;
  counters_.balls_visited += ctx.st.balls_visited;
  counters_.relations_recomputed += ctx.st.relations_recomputed;
  counters_.relations_folded += ctx.st.relations_folded;
  counters_.combines += ctx.st.combines;
  counters_.early_returns += ctx.st.early_returned ? 1 : 0;
  counters_.update_ms += ctx.st.total_ms;
  return current_;
}

}  // namespace teamsim
