#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "teamsim/ball.h"
#include "teamsim/fragmentation.h"
#include "teamsim/simulation.h"
#include "teamsim/updates.h"

namespace teamsim {

// Bit i (0-based) set when fragment i has a match in the ball.
using TypeCode = std::uint32_t;

std::string type_code_str(TypeCode tc, std::size_t h);

struct BallStatus {
  UpdateId cflag = 0;  // last pattern update reflected in the stored relations
  Density den;         // 2 * rho_c
  bool den_valid = false;
  bool alive = false;
};

struct PlannedUpdate {
  UpdateId id = 0;
  PatternUpdate unit;
  bool derived = false;  // cut deletion implied by a node deletion
};

// h fragment stacks plus one cut stack, ordered by a global UpdateId.
class UpdatePlanner {
 public:
  explicit UpdatePlanner(std::size_t h = 1) : stacks_(h + 1) {}

  // target is a fragment index or kCut.
  UpdateId record(int target, PatternUpdate unit, bool derived = false);
  std::vector<const PlannedUpdate*> pending_for(std::size_t frag, UpdateId cflag) const;
  UpdateId latest() const { return next_id_; }
  const std::vector<std::vector<PlannedUpdate>>& stacks() const { return stacks_; }
  std::size_t h() const { return stacks_.size() - 1; }

 private:
  friend class FbmIndex;
  std::vector<std::vector<PlannedUpdate>> stacks_;
  UpdateId next_id_ = 0;
};

// Filtering codes, one per bucket.
class BallFilter {
 public:
  explicit BallFilter(std::size_t h = 1) : h_(h), codes_(std::size_t{1} << h, all_ones()) {}

  TypeCode all_ones() const { return (TypeCode{1} << h_) - 1; }
  // A deletion on fragment i zeroes bit i in every code.
  void apply_deletion(std::size_t frag);
  void reset(TypeCode bucket) { codes_[bucket] = all_ones(); }
  TypeCode code(TypeCode bucket) const { return codes_[bucket]; }
  const std::vector<TypeCode>& codes() const { return codes_; }

 private:
  friend class FbmIndex;
  std::size_t h_;
  std::vector<TypeCode> codes_;
};

// Fragment-bucket-match index: buckets of centers by type code, ball status,
// stored per-fragment relations, the ball filter and the update planner.
class FbmIndex {
 public:
  FbmIndex() = default;
  FbmIndex(std::size_t h, Hop r);

  std::size_t h() const { return h_; }
  Hop r() const { return r_; }
  TypeCode all_ones() const { return bf_.all_ones(); }

  bool has_ball(NodeId v) const { return v < status_.size() && status_[v].alive; }
  TypeCode code(NodeId v) const { return code_[v]; }
  const std::vector<NodeId>& bucket(TypeCode tc) const { return buckets_[tc]; }
  std::vector<NodeId> fbm_lookup_bucket(TypeCode tc) const;
  std::size_t num_balls() const { return num_balls_; }

  BallStatus& status(NodeId v) { return status_[v]; }
  const BallStatus& status(NodeId v) const { return status_[v]; }
  const MatchRelation& relation(NodeId v, std::size_t frag) const { return rel_[v][frag]; }
  void set_relation(NodeId v, std::size_t frag, MatchRelation m);

  void add_ball(NodeId v, UpdateId cflag);
  void remove_ball(NodeId v);
  // Recomputes the bucket from the stored relations and advances cflag.
  void fbm_relink(NodeId v, UpdateId cflag, const Fragmentation& frag);
  // `vacuous` marks fragments without nodes, which always count as matched.
  void fbm_relink(NodeId v, UpdateId cflag, TypeCode vacuous);

  BallFilter& filter() { return bf_; }
  const BallFilter& filter() const { return bf_; }
  UpdatePlanner& planner() { return up_; }
  const UpdatePlanner& planner() const { return up_; }

  // Centers in every bucket j with tc_j & fc_j == fc_j; those codes reset.
  std::vector<NodeId> idaball();

  // Binary snapshot ("TSIX") and a human-readable dump.
  void save(std::ostream& out) const;
  static FbmIndex load(std::istream& in);
  void dump(std::ostream& out, const DataGraph& g, const PatternGraph& p) const;
  bool same_state(const FbmIndex& o) const;

 private:
  void ensure(NodeId v);

  std::size_t h_ = 1;
  Hop r_ = 2;
  std::vector<std::vector<NodeId>> buckets_;
  std::vector<TypeCode> code_;
  std::vector<std::uint32_t> pos_;
  std::vector<BallStatus> status_;
  std::vector<std::vector<MatchRelation>> rel_;
  std::size_t num_balls_ = 0;
  BallFilter bf_;
  UpdatePlanner up_;
};

TypeCode vacuous_fragments(const Fragmentation& frag);

// Builds the index from scratch. Fragments with no node are vacuously matched.
FbmIndex build_index_unchecked(const PatternGraph& p, const Fragmentation& frag, const DataGraph& g, Hop r);
// Same, but throws kUnsatisfiablePattern.
FbmIndex build_index(const PatternGraph& p, const Fragmentation& frag, const DataGraph& g, Hop r);

// Per-fragment relation of one ball computed from scratch.
MatchRelation fragment_relation(const PatternGraph& p, const std::vector<PNodeId>& frag_nodes, const Ball& ball,
                                const DataGraph& g);

}  // namespace teamsim
