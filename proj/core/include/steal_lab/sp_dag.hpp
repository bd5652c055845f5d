#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace steal_lab {

using NodeId = std::uint32_t;
using BlockId = std::uint64_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint64_t kDefaultNodeCap = std::uint64_t{1} << 24;

enum class NodeKind : std::uint8_t { fork, join, leaf };
enum class EdgeKind : std::uint8_t { plain, spawned, continuation };

const char* to_string(NodeKind k);
const char* to_string(EdgeKind k);

/// Raised when a DAG would exceed its node cap.
class DagSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct WorkSpan {
  std::uint64_t work = 0;
  std::uint64_t span = 0;
  friend bool operator==(const WorkSpan&, const WorkSpan&) = default;
};

/// One recursive invocation recorded while a generator emitted nodes. The
/// nodes created during the call occupy the id range [first, last).
struct CallRecord {
  std::string tag;
  std::uint64_t size = 0;
  std::int64_t parent = -1;
  NodeId first = 0;
  NodeId last = 0;
};

enum class ViolationKind : std::uint8_t {
  empty,
  degree,
  dangling_fork,
  bad_work,
  edge_label,
  cycle,
  multiple_roots,
  multiple_sinks,
  cross_join,
  unmatched_join,
  unreachable,
};

struct Violation {
  ViolationKind kind;
  NodeId node = kNoNode;
  std::string message;
};

/// Series-parallel computation DAG. Nodes are stored structure-of-arrays;
/// every node has at most two successors and two predecessors. Fork
/// successors are ordered {spawned child, continuation}.
class SPDag {
 public:
  SPDag() = default;

  std::size_t size() const { return kind_.size(); }
  NodeId root() const { return root_; }
  NodeId sink() const { return sink_; }

  NodeKind kind(NodeId v) const { return kind_[v]; }
  std::uint32_t work(NodeId v) const { return work_[v]; }
  std::span<const BlockId> trace(NodeId v) const {
    return {traces_.data() + trace_begin_[v], traces_.data() + trace_begin_[v + 1]};
  }
  std::span<const NodeId> successors(NodeId v) const {
    return {succ_[v].data(), succ_count_[v]};
  }
  std::span<const NodeId> predecessors(NodeId v) const {
    return {pred_[v].data(), pred_count_[v]};
  }
  EdgeKind edge_kind(NodeId v, std::size_t i) const { return succ_kind_[v][i]; }

  /// Spawned child and continuation of a fork node.
  NodeId spawned(NodeId fork) const { return succ_[fork][0]; }
  NodeId continuation(NodeId fork) const { return succ_[fork][1]; }

  std::uint64_t trace_length() const { return traces_.size(); }
  std::span<const CallRecord> calls() const { return calls_; }

  /// Indices of calls whose parent is `call` (or top-level calls for -1).
  std::vector<std::size_t> child_calls(std::int64_t call) const;

  friend SPDag leaf(std::uint32_t work, std::span<const BlockId> trace);
  /// Series composition: sink of `a` gets an edge to root of `b`.
  friend SPDag seq(SPDag a, SPDag b);
  /// Parallel composition; `left` is the spawned child, `right` the continuation.
  friend SPDag fork_join(SPDag left, SPDag right, std::uint32_t fork_work,
                         std::uint32_t join_work);

 private:
  friend class DagBuilder;

  NodeId append(const SPDag& other);
  NodeId add_node(NodeKind kind, std::uint32_t work, std::span<const BlockId> trace);
  void add_edge(NodeId src, NodeId dst, EdgeKind kind);

  std::vector<NodeKind> kind_;
  std::vector<std::uint32_t> work_;
  std::vector<std::array<NodeId, 2>> succ_;
  std::vector<std::array<EdgeKind, 2>> succ_kind_;
  std::vector<std::array<NodeId, 2>> pred_;
  std::vector<std::uint8_t> succ_count_;
  std::vector<std::uint8_t> pred_count_;
  std::vector<std::uint64_t> trace_begin_{0};
  std::vector<BlockId> traces_;
  std::vector<CallRecord> calls_;
  NodeId root_ = kNoNode;
  NodeId sink_ = kNoNode;
  bool degree_overflow_ = false;
  NodeId overflow_node_ = kNoNode;
  std::uint64_t node_cap_ = kDefaultNodeCap;

  friend std::optional<Violation> validate(const SPDag& dag);
};

SPDag leaf(std::uint32_t work, std::span<const BlockId> trace = {});
SPDag seq(SPDag a, SPDag b);
SPDag fork_join(SPDag left, SPDag right, std::uint32_t fork_work = 1,
                std::uint32_t join_work = 1);

/// Checks every SP invariant; returns the first violation found.
std::optional<Violation> validate(const SPDag& dag);

/// Work and span via a topological sweep over the explicit DAG.
WorkSpan work_span(const SPDag& dag);

/// Execution order of one randomized work-stealing processor: continuation
/// first, spawned child popped later from the front of the deque.
std::vector<NodeId> serial_order(const SPDag& dag);

/// Handle to a partially built sub-DAG inside a DagBuilder.
struct Fragment {
  NodeId entry = kNoNode;
  NodeId exit = kNoNode;
};

/// Arena builder used by the kernel generators; nodes are created once and
/// never copied. Fragments compose in O(1).
class DagBuilder {
 public:
  explicit DagBuilder(std::uint64_t node_cap = kDefaultNodeCap);

  Fragment leaf(std::uint32_t work, std::span<const BlockId> trace = {});
  Fragment seq(Fragment a, Fragment b);
  Fragment fork_join(Fragment child, Fragment continuation);
  /// Balanced binary fork tree over `parts` (identity for a single part).
  Fragment parallel(std::span<const Fragment> parts);
  Fragment series(std::span<const Fragment> parts);

  void set_fork_join_work(std::uint32_t fork_work, std::uint32_t join_work) {
    fork_work_ = fork_work;
    join_work_ = join_work;
  }

  /// Call bookkeeping. Calls nest; end_call closes the innermost open call.
  void begin_call(std::string tag, std::uint64_t size);
  void end_call();

  std::size_t size() const { return dag_.size(); }

  /// Low-level access for hand-built (possibly invalid) DAGs.
  NodeId add_node(NodeKind kind, std::uint32_t work, std::span<const BlockId> trace = {});
  void add_edge(NodeId src, NodeId dst, EdgeKind kind = EdgeKind::plain);

  /// Finalizes with explicit root and sink.
  SPDag finish(Fragment whole) &&;
  /// Finalizes a hand-built DAG; root/sink are inferred from degrees.
  SPDag finish_raw() &&;

 private:
  SPDag dag_;
  std::vector<std::size_t> open_calls_;
  std::uint32_t fork_work_ = 1;
  std::uint32_t join_work_ = 1;
};

/// Text dump: `node <id> <kind> <work> <trace-len> <blocks...>` and
/// `edge <src> <dst> <spawned|continuation|plain>` lines.
void write_dump(std::ostream& os, const SPDag& dag);
SPDag read_dump(std::istream& is);

}  // namespace steal_lab
