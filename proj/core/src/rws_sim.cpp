#include "steal_lab/rws_sim.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace steal_lab {

void SchedulerConfig::validate() const {
  if (procs < 1) throw std::invalid_argument("scheduler: P must be >= 1");
  if (steal_cost < 1) throw std::invalid_argument("scheduler: steal cost must be >= 1");
  if (asynchrony < 1) throw std::invalid_argument("scheduler: k must be >= 1");
  if (!(jitter >= 0.0 && jitter < 1.0)) throw std::invalid_argument("scheduler: jitter must be in [0,1)");
}

std::string SimReport::to_json() const {
  nlohmann::ordered_json j;
  j["steal_attempts"] = steal_attempts;
  j["successful_steals"] = successful_steals;
  j["ticks"] = ticks;
  j["q_p"] = q_p;
  j["per_processor_misses"] = per_processor_misses;
  j["executed_nodes"] = executed_nodes;
  j["seed"] = seed;
  return j.dump();
}

namespace {

struct Proc {
  std::deque<NodeId> dq;  // front = owner end
  NodeId cur = kNoNode;
  std::uint32_t remaining = 0;
  bool started = false;
  std::uint32_t cooldown = 0;
  std::uint64_t instructions = 0;
  // asynchrony bookkeeping
  bool window_open = false;             // failed and not yet retried
  std::vector<std::uint32_t> window;    // attempts by others inside the window
  bool attempted = false;
  std::vector<std::uint64_t> snapshot;  // others' instruction counts at own last attempt
};

class Simulator {
 public:
  Simulator(const SPDag& dag, const SchedulerConfig& cfg, const CacheConfig& cache)
      : dag_(dag), cfg_(cfg), rng_(cfg.seed), arrived_(dag.size(), 0) {
    procs_.resize(cfg.procs);
    for (auto& p : procs_) {
      p.window.assign(cfg.procs, 0);
      p.snapshot.assign(cfg.procs, 0);
    }
    caches_.reserve(cfg.procs);
    for (std::uint32_t i = 0; i < cfg.procs; ++i) caches_.emplace_back(cache);
    assign(0, dag.root());
  }

  SimReport run() {
    const std::uint32_t P = cfg_.procs;
    std::vector<std::uint32_t> perm(P);
    std::iota(perm.begin(), perm.end(), 0u);
    std::bernoulli_distribution skip(cfg_.jitter);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> requests;  // (victim, thief)
    while (report_.executed_nodes < dag_.size()) {
      std::shuffle(perm.begin(), perm.end(), rng_);
      requests.clear();
      for (std::uint32_t p : perm) {
        if (cfg_.jitter > 0.0 && skip(rng_)) continue;
        step(p, requests);
      }
      resolve(requests);
      ++tick_;
    }
    report_.ticks = tick_;
    report_.seed = cfg_.seed;
    report_.per_processor_misses.resize(P);
    for (std::uint32_t i = 0; i < P; ++i) report_.per_processor_misses[i] = caches_[i].misses();
    report_.q_p = parallel_qp(report_);
    return std::move(report_);
  }

 private:
  void event(std::uint32_t p, SimEventKind kind, NodeId node = kNoNode, std::uint32_t victim = 0) {
    if (cfg_.record_events) report_.events.push_back({tick_, p, kind, node, victim});
  }

  void assign(std::uint32_t p, NodeId v) {
    procs_[p].cur = v;
    procs_[p].remaining = dag_.work(v);
    procs_[p].started = false;
  }

  bool busy(const Proc& q) const { return q.cur != kNoNode && q.cooldown == 0; }

  // Both asynchrony contracts are enforced by deferring the attempt.
  bool may_attempt(std::uint32_t p) const {
    const Proc& me = procs_[p];
    for (std::uint32_t q = 0; q < procs_.size(); ++q) {
      if (q == p) continue;
      const Proc& other = procs_[q];
      if (other.window_open && other.window[p] >= cfg_.asynchrony) return false;
      if (me.attempted && busy(other) && other.instructions <= me.snapshot[q]) return false;
    }
    return true;
  }

  void step(std::uint32_t p, std::vector<std::pair<std::uint32_t, std::uint32_t>>& requests) {
    Proc& me = procs_[p];
    if (me.cooldown > 0) {
      --me.cooldown;
      return;
    }
    if (me.cur == kNoNode && !me.dq.empty()) {
      const NodeId v = me.dq.front();
      me.dq.pop_front();
      event(p, SimEventKind::pop_front, v);
      assign(p, v);
    }
    if (me.cur != kNoNode) {
      if (!me.started) {
        me.started = true;
        caches_[p].replay(dag_.trace(me.cur));
        if (cfg_.record_order) report_.order.push_back(me.cur);
      }
      event(p, SimEventKind::execute, me.cur);
      ++me.instructions;
      if (--me.remaining == 0) complete(p);
      return;
    }
    if (procs_.size() == 1 || !may_attempt(p)) return;
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(procs_.size()) - 2);
    std::uint32_t victim = pick(rng_);
    if (victim >= p) ++victim;
    requests.emplace_back(victim, p);
    ++report_.steal_attempts;
    event(p, SimEventKind::attempt, kNoNode, victim);
    me.cooldown = cfg_.steal_cost - 1;
    me.window_open = false;
    std::fill(me.window.begin(), me.window.end(), 0u);
    me.attempted = true;
    for (std::uint32_t q = 0; q < procs_.size(); ++q) {
      me.snapshot[q] = procs_[q].instructions;
      if (q != p && procs_[q].window_open) ++procs_[q].window[p];
    }
  }

  void complete(std::uint32_t p) {
    Proc& me = procs_[p];
    const NodeId v = me.cur;
    ++report_.executed_nodes;
    me.cur = kNoNode;
    if (dag_.kind(v) == NodeKind::fork) {
      me.dq.push_front(dag_.spawned(v));
      event(p, SimEventKind::push_front, dag_.spawned(v));
      assign(p, dag_.continuation(v));
      return;
    }
    const auto succ = dag_.successors(v);
    if (succ.empty()) return;
    const NodeId s = succ[0];
    if (dag_.kind(s) == NodeKind::join) {
      if (++arrived_[s] < dag_.predecessors(s).size()) return;
    }
    assign(p, s);
  }

  void resolve(std::vector<std::pair<std::uint32_t, std::uint32_t>>& requests) {
    if (requests.empty()) return;
    std::stable_sort(requests.begin(), requests.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t i = 0;
    while (i < requests.size()) {
      std::size_t j = i;
      while (j < requests.size() && requests[j].first == requests[i].first) ++j;
      Proc& victim = procs_[requests[i].first];
      std::size_t winner = j;  // none
      if (!victim.dq.empty()) {
        std::uniform_int_distribution<std::size_t> pick(i, j - 1);
        winner = pick(rng_);
        const NodeId v = victim.dq.back();
        victim.dq.pop_back();
        const std::uint32_t thief = requests[winner].second;
        event(thief, SimEventKind::steal_back, v, requests[i].first);
        assign(thief, v);
        ++report_.successful_steals;
      }
      for (std::size_t r = i; r < j; ++r) {
        if (r == winner) continue;
        Proc& loser = procs_[requests[r].second];
        loser.window_open = true;
        std::fill(loser.window.begin(), loser.window.end(), 0u);
        event(requests[r].second, SimEventKind::fail, kNoNode, requests[r].first);
      }
      i = j;
    }
  }

  const SPDag& dag_;
  const SchedulerConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<Proc> procs_;
  std::vector<LruCache> caches_;
  std::vector<std::uint8_t> arrived_;
  std::uint64_t tick_ = 0;
  SimReport report_;
};

}  // namespace

SimReport run(const SPDag& dag, const SchedulerConfig& cfg, const CacheConfig& cache) {
  cfg.validate();
  cache.validate();
  if (auto v = validate(dag)) throw std::invalid_argument("invalid dag: " + v->message);
  Simulator sim(dag, cfg, cache);
  return sim.run();
}

}  // namespace steal_lab
