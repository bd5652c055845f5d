#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steal_lab/cache_sim.hpp"
#include "steal_lab/sp_dag.hpp"

namespace steal_lab {

struct SchedulerConfig {
  std::uint32_t procs = 1;
  std::uint32_t steal_cost = 4;  // ticks per steal attempt, s
  std::uint32_t asynchrony = 2;  // k
  std::uint64_t seed = 0;
  double jitter = 0.1;           // probability a processor skips a tick
  bool record_order = false;
  bool record_events = false;

  void validate() const;
};

enum class SimEventKind : std::uint8_t {
  push_front,  // owner pushed a spawned child
  pop_front,   // owner took its own most recent child
  steal_back,  // thief removed the oldest entry of the victim's deque
  attempt,     // steal attempt issued (resolved at end of tick)
  fail,        // attempt resolved without a task
  execute,     // one unit of work
};

struct SimEvent {
  std::uint64_t tick;
  std::uint32_t proc;
  SimEventKind kind;
  NodeId node = kNoNode;
  std::uint32_t victim = 0;
};

struct SimReport {
  std::uint64_t steal_attempts = 0;
  std::uint64_t successful_steals = 0;
  std::uint64_t ticks = 0;
  std::uint64_t q_p = 0;
  std::vector<std::uint64_t> per_processor_misses;
  std::uint64_t executed_nodes = 0;
  std::uint64_t seed = 0;

  // Diagnostics; not part of the JSON form.
  std::vector<NodeId> order;  // node start order when record_order is set
  std::vector<SimEvent> events;

  /// JSON object with exactly the fields above the diagnostics, in order.
  std::string to_json() const;
};

/// Tick-driven randomized work-stealing simulation. Processor 0 starts with
/// the root; every other processor starts idle. Throws std::invalid_argument
/// for invalid DAGs or configs.
SimReport run(const SPDag& dag, const SchedulerConfig& cfg, const CacheConfig& cache);

}  // namespace steal_lab
