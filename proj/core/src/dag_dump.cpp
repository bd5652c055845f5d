#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "steal_lab/sp_dag.hpp"

namespace steal_lab {

void write_dump(std::ostream& os, const SPDag& dag) {
  for (NodeId v = 0; v < dag.size(); ++v) {
    const auto tr = dag.trace(v);
    os << "node " << v << ' ' << to_string(dag.kind(v)) << ' ' << dag.work(v) << ' ' << tr.size();
    for (BlockId b : tr) os << ' ' << b;
    os << '\n';
  }
  for (NodeId v = 0; v < dag.size(); ++v) {
    const auto succ = dag.successors(v);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      os << "edge " << v << ' ' << succ[i] << ' ' << to_string(dag.edge_kind(v, i)) << '\n';
    }
  }
}

namespace {

NodeKind parse_kind(const std::string& s) {
  if (s == "fork") return NodeKind::fork;
  if (s == "join") return NodeKind::join;
  if (s == "leaf") return NodeKind::leaf;
  throw std::runtime_error("dump: bad node kind '" + s + "'");
}

EdgeKind parse_edge(const std::string& s) {
  if (s == "plain") return EdgeKind::plain;
  if (s == "spawned") return EdgeKind::spawned;
  if (s == "continuation") return EdgeKind::continuation;
  throw std::runtime_error("dump: bad edge kind '" + s + "'");
}

}  // namespace

SPDag read_dump(std::istream& is) {
  DagBuilder b;
  std::string line;
  std::vector<BlockId> trace;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "node") {
      std::uint64_t id = 0, work = 0, len = 0;
      std::string kind;
      ls >> id >> kind >> work >> len;
      if (!ls || id != b.size()) throw std::runtime_error("dump: bad node line " + std::to_string(lineno));
      trace.resize(len);
      for (auto& blk : trace) ls >> blk;
      if (!ls) throw std::runtime_error("dump: short trace on line " + std::to_string(lineno));
      b.add_node(parse_kind(kind), static_cast<std::uint32_t>(work), trace);
    } else if (tag == "edge") {
      std::uint64_t src = 0, dst = 0;
      std::string kind;
      ls >> src >> dst >> kind;
      if (!ls || src >= b.size() || dst >= b.size()) {
        throw std::runtime_error("dump: bad edge line " + std::to_string(lineno));
      }
      b.add_edge(static_cast<NodeId>(src), static_cast<NodeId>(dst), parse_edge(kind));
    } else {
      throw std::runtime_error("dump: unknown record on line " + std::to_string(lineno));
    }
  }
  return std::move(b).finish_raw();
}

}  // namespace steal_lab
