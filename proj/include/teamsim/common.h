#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace teamsim {

using NodeId = std::uint32_t;
using PNodeId = std::uint32_t;
using LabelId = std::uint32_t;
using Hop = std::uint32_t;
using UpdateId = std::uint64_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class ErrorKind {
  kParse,
  kDuplicateNode,
  kDuplicateEdge,
  kUnknownNode,
  kSelfLoop,
  kInvalidInterval,
  kPatternDisconnected,
  kInvalidUpdate,
  kInvalidH,
  kUnsatisfiablePattern,
  kDisconnected,
  kIo,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, int line = 0, int column = 0);

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ErrorKind kind_;
  int line_;
  int column_;
};

// Capacity bound [lower, upper]; upper may be unbounded.
struct Interval {
  static constexpr std::uint32_t kUnbounded = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t lower = 1;
  std::uint32_t upper = kUnbounded;

  bool unbounded() const { return upper == kUnbounded; }
  bool contains(std::uint64_t n) const { return n >= lower && (unbounded() || n <= upper); }
  std::string str() const;
  bool operator==(const Interval&) const = default;
};

// Exact edges/nodes ratio. nodes == 0 only for the default-constructed value.
struct Density {
  std::uint64_t edges = 0;
  std::uint64_t nodes = 1;

  double value() const { return nodes == 0 ? 0.0 : double(edges) / double(nodes); }
  std::string str() const;
  bool identical(const Density& o) const { return edges == o.edges && nodes == o.nodes; }
};

inline std::strong_ordering operator<=>(const Density& a, const Density& b) {
  unsigned __int128 l = (unsigned __int128)a.edges * b.nodes;
  unsigned __int128 r = (unsigned __int128)b.edges * a.nodes;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}
inline bool operator==(const Density& a, const Density& b) { return (a <=> b) == 0; }

}  // namespace teamsim
