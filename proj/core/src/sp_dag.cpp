#include "steal_lab/sp_dag.hpp"

#include <algorithm>
#include <queue>
#include <utility>

namespace steal_lab {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::fork: return "fork";
    case NodeKind::join: return "join";
    case NodeKind::leaf: return "leaf";
  }
  return "?";
}

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::plain: return "plain";
    case EdgeKind::spawned: return "spawned";
    case EdgeKind::continuation: return "continuation";
  }
  return "?";
}

NodeId SPDag::add_node(NodeKind kind, std::uint32_t work, std::span<const BlockId> trace) {
  if (kind_.size() >= node_cap_) {
    throw DagSizeError("SPDag exceeds node cap of " + std::to_string(node_cap_) + " nodes");
  }
  const auto id = static_cast<NodeId>(kind_.size());
  kind_.push_back(kind);
  work_.push_back(work);
  succ_.push_back({kNoNode, kNoNode});
  succ_kind_.push_back({EdgeKind::plain, EdgeKind::plain});
  pred_.push_back({kNoNode, kNoNode});
  succ_count_.push_back(0);
  pred_count_.push_back(0);
  traces_.insert(traces_.end(), trace.begin(), trace.end());
  trace_begin_.push_back(traces_.size());
  return id;
}

void SPDag::add_edge(NodeId src, NodeId dst, EdgeKind kind) {
  if (succ_count_[src] == 2 || pred_count_[dst] == 2) {
    degree_overflow_ = true;
    overflow_node_ = succ_count_[src] == 2 ? src : dst;
    return;
  }
  succ_[src][succ_count_[src]] = dst;
  succ_kind_[src][succ_count_[src]] = kind;
  ++succ_count_[src];
  pred_[dst][pred_count_[dst]++] = src;
}

NodeId SPDag::append(const SPDag& other) {
  const auto offset = static_cast<NodeId>(size());
  if (size() + other.size() > node_cap_) {
    throw DagSizeError("SPDag exceeds node cap of " + std::to_string(node_cap_) + " nodes");
  }
  auto shift = [offset](std::array<NodeId, 2> a) {
    for (auto& v : a) {
      if (v != kNoNode) v += offset;
    }
    return a;
  };
  kind_.insert(kind_.end(), other.kind_.begin(), other.kind_.end());
  work_.insert(work_.end(), other.work_.begin(), other.work_.end());
  for (const auto& s : other.succ_) succ_.push_back(shift(s));
  for (const auto& p : other.pred_) pred_.push_back(shift(p));
  succ_kind_.insert(succ_kind_.end(), other.succ_kind_.begin(), other.succ_kind_.end());
  succ_count_.insert(succ_count_.end(), other.succ_count_.begin(), other.succ_count_.end());
  pred_count_.insert(pred_count_.end(), other.pred_count_.begin(), other.pred_count_.end());
  const auto trace_offset = traces_.size();
  traces_.insert(traces_.end(), other.traces_.begin(), other.traces_.end());
  for (std::size_t i = 1; i < other.trace_begin_.size(); ++i) {
    trace_begin_.push_back(other.trace_begin_[i] + trace_offset);
  }
  const auto call_offset = static_cast<std::int64_t>(calls_.size());
  for (auto c : other.calls_) {
    if (c.parent >= 0) c.parent += call_offset;
    c.first += offset;
    c.last += offset;
    calls_.push_back(std::move(c));
  }
  degree_overflow_ = degree_overflow_ || other.degree_overflow_;
  return offset;
}

std::vector<std::size_t> SPDag::child_calls(std::int64_t call) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < calls_.size(); ++i) {
    if (calls_[i].parent == call) out.push_back(i);
  }
  return out;
}

SPDag leaf(std::uint32_t work, std::span<const BlockId> trace) {
  SPDag d;
  const auto v = d.add_node(NodeKind::leaf, work, trace);
  d.root_ = d.sink_ = v;
  return d;
}

SPDag seq(SPDag a, SPDag b) {
  const NodeId a_sink = a.sink_;
  const NodeId off = a.append(b);
  a.add_edge(a_sink, b.root_ + off, EdgeKind::plain);
  a.sink_ = b.sink_ + off;
  return a;
}

SPDag fork_join(SPDag left, SPDag right, std::uint32_t fork_work, std::uint32_t join_work) {
  SPDag d = std::move(left);
  const NodeId l_root = d.root_;
  const NodeId l_sink = d.sink_;
  const NodeId off = d.append(right);
  const NodeId f = d.add_node(NodeKind::fork, fork_work, {});
  const NodeId j = d.add_node(NodeKind::join, join_work, {});
  d.add_edge(f, l_root, EdgeKind::spawned);
  d.add_edge(f, right.root_ + off, EdgeKind::continuation);
  d.add_edge(l_sink, j, EdgeKind::plain);
  d.add_edge(right.sink_ + off, j, EdgeKind::plain);
  d.root_ = f;
  d.sink_ = j;
  return d;
}

namespace {

Violation violation(ViolationKind kind, NodeId node, std::string msg) {
  return Violation{kind, node, std::move(msg)};
}

std::string at(NodeId v) { return " at node " + std::to_string(v); }

}  // namespace

std::optional<Violation> validate(const SPDag& dag) {
  const std::size_t n = dag.size();
  if (n == 0) return violation(ViolationKind::empty, kNoNode, "empty DAG");
  if (dag.degree_overflow_) {
    return violation(ViolationKind::degree, dag.overflow_node_,
                     "node degree exceeds 2" + at(dag.overflow_node_));
  }

  // Acyclicity first: a self-edge must read as a cycle, not a degree problem.
  {
    std::vector<std::uint8_t> indeg(dag.pred_count_);
    std::vector<NodeId> ready;
    for (NodeId v = 0; v < n; ++v) {
      if (indeg[v] == 0) ready.push_back(v);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
      const NodeId v = ready.back();
      ready.pop_back();
      ++seen;
      for (NodeId s : dag.successors(v)) {
        if (--indeg[s] == 0) ready.push_back(s);
      }
    }
    if (seen != n) {
      for (NodeId v = 0; v < n; ++v) {
        if (indeg[v] != 0) return violation(ViolationKind::cycle, v, "cycle" + at(v));
      }
    }
  }

  NodeId root = kNoNode;
  NodeId sink = kNoNode;
  for (NodeId v = 0; v < n; ++v) {
    const auto ns = dag.succ_count_[v];
    const auto np = dag.pred_count_[v];
    if (dag.work_[v] < 1) return violation(ViolationKind::bad_work, v, "work < 1" + at(v));
    switch (dag.kind_[v]) {
      case NodeKind::fork: {
        if (ns != 2) return violation(ViolationKind::dangling_fork, v, "dangling fork" + at(v));
        if (np > 1) return violation(ViolationKind::degree, v, "fork with 2 predecessors" + at(v));
        const auto k0 = dag.succ_kind_[v][0];
        const auto k1 = dag.succ_kind_[v][1];
        const bool labeled = (k0 == EdgeKind::spawned && k1 == EdgeKind::continuation) ||
                             (k0 == EdgeKind::continuation && k1 == EdgeKind::spawned);
        if (!labeled) {
          return violation(ViolationKind::edge_label, v,
                           "fork successors not labeled spawned/continuation" + at(v));
        }
        break;
      }
      case NodeKind::join:
        if (np != 2) return violation(ViolationKind::unmatched_join, v, "mismatched join" + at(v));
        if (ns > 1) return violation(ViolationKind::degree, v, "join with 2 successors" + at(v));
        break;
      case NodeKind::leaf:
        if (ns > 1 || np > 1) return violation(ViolationKind::degree, v, "leaf degree > 1" + at(v));
        break;
    }
    if (dag.kind_[v] != NodeKind::fork) {
      for (std::size_t i = 0; i < ns; ++i) {
        if (dag.succ_kind_[v][i] != EdgeKind::plain) {
          return violation(ViolationKind::edge_label, v, "labeled edge from non-fork" + at(v));
        }
      }
    }
    if (np == 0) {
      if (root != kNoNode) return violation(ViolationKind::multiple_roots, v, "multiple roots" + at(v));
      root = v;
    }
    if (ns == 0) {
      if (sink != kNoNode) return violation(ViolationKind::multiple_sinks, v, "multiple sinks" + at(v));
      sink = v;
    }
  }
  if (dag.root_ != kNoNode && dag.root_ != root) {
    return violation(ViolationKind::multiple_roots, dag.root_, "declared root has predecessors");
  }
  if (dag.sink_ != kNoNode && dag.sink_ != sink) {
    return violation(ViolationKind::multiple_sinks, dag.sink_, "declared sink has successors");
  }

  // Proper nesting: both branches of every fork must meet at the same join,
  // and each join closes exactly one fork.
  struct Frame {
    NodeId fork;
    NodeId first_join;
    bool in_continuation;
  };
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<Frame> stack;
  NodeId cur = root;
  for (;;) {
    while (cur != kNoNode && dag.kind_[cur] != NodeKind::join) {
      visited[cur] = 1;
      if (dag.kind_[cur] == NodeKind::leaf) {
        cur = dag.succ_count_[cur] ? dag.succ_[cur][0] : kNoNode;
      } else {
        stack.push_back({cur, kNoNode, false});
        cur = dag.spawned(cur);
        if (dag.succ_kind_[stack.back().fork][0] != EdgeKind::spawned) {
          cur = dag.succ_[stack.back().fork][1];
        }
      }
    }
    if (stack.empty()) {
      if (cur != kNoNode) {
        return violation(ViolationKind::unmatched_join, cur, "join without matching fork" + at(cur));
      }
      break;
    }
    Frame& top = stack.back();
    if (!top.in_continuation) {
      top.first_join = cur;
      top.in_continuation = true;
      const bool spawned_first = dag.succ_kind_[top.fork][0] == EdgeKind::spawned;
      cur = dag.succ_[top.fork][spawned_first ? 1 : 0];
      continue;
    }
    const NodeId j1 = top.first_join;
    const NodeId j2 = cur;
    if (j1 == kNoNode || j2 == kNoNode || j1 != j2) {
      return violation(ViolationKind::cross_join, top.fork,
                       "cross join: branches of fork do not meet at one join" + at(top.fork));
    }
    if (visited[j1]) {
      return violation(ViolationKind::cross_join, j1, "cross join: join closes two forks" + at(j1));
    }
    visited[j1] = 1;
    stack.pop_back();
    cur = dag.succ_count_[j1] ? dag.succ_[j1][0] : kNoNode;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!visited[v]) return violation(ViolationKind::unreachable, v, "node not reachable in SP order" + at(v));
  }
  return std::nullopt;
}

WorkSpan work_span(const SPDag& dag) {
  const std::size_t n = dag.size();
  WorkSpan ws;
  std::vector<std::uint8_t> indeg(n);
  std::vector<std::uint64_t> finish(n, 0);
  std::vector<NodeId> ready;
  for (NodeId v = 0; v < n; ++v) {
    indeg[v] = static_cast<std::uint8_t>(dag.predecessors(v).size());
    if (indeg[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    const NodeId v = ready.back();
    ready.pop_back();
    ws.work += dag.work(v);
    finish[v] += dag.work(v);
    ws.span = std::max(ws.span, finish[v]);
    for (NodeId s : dag.successors(v)) {
      finish[s] = std::max(finish[s], finish[v]);
      if (--indeg[s] == 0) ready.push_back(s);
    }
  }
  return ws;
}

std::vector<NodeId> serial_order(const SPDag& dag) {
  std::vector<NodeId> order;
  if (dag.size() == 0) return order;
  order.reserve(dag.size());
  std::vector<std::uint8_t> arrived(dag.size(), 0);
  std::vector<NodeId> deque;  // back() is the front of the deque
  NodeId cur = dag.root();
  for (;;) {
    order.push_back(cur);
    NodeId next = kNoNode;
    if (dag.kind(cur) == NodeKind::fork) {
      deque.push_back(dag.spawned(cur));
      next = dag.continuation(cur);
    } else if (!dag.successors(cur).empty()) {
      const NodeId s = dag.successors(cur)[0];
      if (dag.kind(s) == NodeKind::join) {
        if (++arrived[s] == dag.predecessors(s).size()) next = s;
      } else {
        next = s;
      }
    }
    if (next == kNoNode) {
      if (deque.empty()) break;
      next = deque.back();
      deque.pop_back();
    }
    cur = next;
  }
  return order;
}

DagBuilder::DagBuilder(std::uint64_t node_cap) { dag_.node_cap_ = node_cap; }

Fragment DagBuilder::leaf(std::uint32_t work, std::span<const BlockId> trace) {
  const NodeId v = dag_.add_node(NodeKind::leaf, work, trace);
  return {v, v};
}

Fragment DagBuilder::seq(Fragment a, Fragment b) {
  dag_.add_edge(a.exit, b.entry, EdgeKind::plain);
  return {a.entry, b.exit};
}

Fragment DagBuilder::fork_join(Fragment child, Fragment continuation) {
  const NodeId f = dag_.add_node(NodeKind::fork, fork_work_, {});
  const NodeId j = dag_.add_node(NodeKind::join, join_work_, {});
  dag_.add_edge(f, child.entry, EdgeKind::spawned);
  dag_.add_edge(f, continuation.entry, EdgeKind::continuation);
  dag_.add_edge(child.exit, j, EdgeKind::plain);
  dag_.add_edge(continuation.exit, j, EdgeKind::plain);
  return {f, j};
}

Fragment DagBuilder::parallel(std::span<const Fragment> parts) {
  if (parts.empty()) throw std::invalid_argument("parallel() needs at least one fragment");
  if (parts.size() == 1) return parts[0];
  const std::size_t half = parts.size() / 2;
  const Fragment left = parallel(parts.first(half));
  const Fragment right = parallel(parts.subspan(half));
  return fork_join(left, right);
}

Fragment DagBuilder::series(std::span<const Fragment> parts) {
  if (parts.empty()) throw std::invalid_argument("series() needs at least one fragment");
  Fragment acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = seq(acc, parts[i]);
  return acc;
}

void DagBuilder::begin_call(std::string tag, std::uint64_t size) {
  CallRecord rec;
  rec.tag = std::move(tag);
  rec.size = size;
  rec.parent = open_calls_.empty() ? -1 : static_cast<std::int64_t>(open_calls_.back());
  rec.first = static_cast<NodeId>(dag_.size());
  open_calls_.push_back(dag_.calls_.size());
  dag_.calls_.push_back(std::move(rec));
}

void DagBuilder::end_call() {
  if (open_calls_.empty()) throw std::logic_error("end_call without begin_call");
  dag_.calls_[open_calls_.back()].last = static_cast<NodeId>(dag_.size());
  open_calls_.pop_back();
}

NodeId DagBuilder::add_node(NodeKind kind, std::uint32_t work, std::span<const BlockId> trace) {
  return dag_.add_node(kind, work, trace);
}

void DagBuilder::add_edge(NodeId src, NodeId dst, EdgeKind kind) { dag_.add_edge(src, dst, kind); }

SPDag DagBuilder::finish(Fragment whole) && {
  if (!open_calls_.empty()) throw std::logic_error("finish() with open calls");
  dag_.root_ = whole.entry;
  dag_.sink_ = whole.exit;
  return std::move(dag_);
}

SPDag DagBuilder::finish_raw() && {
  for (NodeId v = 0; v < dag_.size(); ++v) {
    if (dag_.pred_count_[v] == 0 && dag_.root_ == kNoNode) dag_.root_ = v;
    if (dag_.succ_count_[v] == 0 && dag_.sink_ == kNoNode) dag_.sink_ = v;
  }
  return std::move(dag_);
}

}  // namespace steal_lab
