#include <gtest/gtest.h>

#include <deque>
#include <map>

#include "steal_lab/bench.hpp"
#include "steal_lab/kernels.hpp"
#include "steal_lab/rws_sim.hpp"

using namespace steal_lab;

namespace {

SchedulerConfig cfg(std::uint32_t P, std::uint64_t seed) {
  SchedulerConfig c;
  c.procs = P;
  c.seed = seed;
  return c;
}

SPDag chain(int len) {
  SPDag d = leaf(2);
  for (int i = 1; i < len; ++i) d = seq(std::move(d), leaf(2));
  return d;
}

}  // namespace

TEST(Rws, SingleProcessorFollowsSerialOrder) {
  const auto r = generate("kleene", 16, 3, KernelConfig{16, 4});
  SchedulerConfig c = cfg(1, 5);
  c.record_order = true;
  const auto rep = run(r.dag, c, {});
  EXPECT_EQ(rep.order, serial_order(r.dag));
  EXPECT_EQ(rep.successful_steals, 0u);
  EXPECT_EQ(rep.steal_attempts, 0u);
  EXPECT_EQ(rep.q_p, sequential_q1(r.dag, {}));
}

TEST(Rws, ChainNeverStealsSuccessfully) {
  const SPDag d = chain(50);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rep = run(d, cfg(4, seed), {});
    EXPECT_EQ(rep.successful_steals, 0u);
    EXPECT_EQ(rep.executed_nodes, d.size());
  }
}

TEST(Rws, ExecutesEveryNodeAndSumsMisses) {
  const SPDag d = fork_tree(256, 8);
  for (std::uint32_t P : {1u, 2u, 4u, 8u}) {
    const auto rep = run(d, cfg(P, 7), {256, 16});
    EXPECT_EQ(rep.executed_nodes, d.size());
    ASSERT_EQ(rep.per_processor_misses.size(), P);
    std::uint64_t sum = 0;
    for (auto m : rep.per_processor_misses) sum += m;
    EXPECT_EQ(rep.q_p, sum);
    EXPECT_LE(rep.successful_steals, rep.steal_attempts);
    EXPECT_GE(rep.ticks, work_span(d).span);
  }
}

TEST(Rws, DeterministicForSeed) {
  const auto r = generate("mm", 32, 1);
  const auto a = run(r.dag, cfg(4, 42), {});
  const auto b = run(r.dag, cfg(4, 42), {});
  EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Rws, JsonFieldOrder) {
  SchedulerConfig c = cfg(1, 9);
  c.jitter = 0.0;
  const auto rep = run(leaf(1), c, {});
  EXPECT_EQ(rep.to_json(),
            R"({"steal_attempts":0,"successful_steals":0,"ticks":1,"q_p":0,"per_processor_misses":[0],)"
            R"("executed_nodes":1,"seed":9})");
}

TEST(Rws, ParallelSpeedupOnWideTree) {
  const SPDag d = fork_tree(512, 64);
  SchedulerConfig one = cfg(1, 1), eight = cfg(8, 1);
  one.jitter = eight.jitter = 0.0;
  const auto t1 = run(d, one, {}).ticks;
  const auto t8 = run(d, eight, {}).ticks;
  EXPECT_LT(t8 * 4, t1);
}

TEST(Rws, StealsBoundedByPD) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SPDag d = fork_tree(128, 128);
    const auto rep = run(d, cfg(4, seed), {});
    EXPECT_LE(rep.successful_steals, 8u * 4u * work_span(d).span);
  }
}

// Replays the event log against per-processor deques: owners push and pop
// at the front, thieves remove from the back.
TEST(Rws, EventLogRespectsDequeDiscipline) {
  const auto r = generate("kleene", 16, 2, KernelConfig{16, 2});
  SchedulerConfig c = cfg(4, 11);
  c.record_events = true;
  const auto rep = run(r.dag, c, {});
  std::vector<std::deque<NodeId>> dq(4);
  std::uint64_t steals = 0, attempts = 0;
  for (const auto& e : rep.events) {
    switch (e.kind) {
      case SimEventKind::push_front: dq[e.proc].push_front(e.node); break;
      case SimEventKind::pop_front:
        ASSERT_FALSE(dq[e.proc].empty());
        ASSERT_EQ(dq[e.proc].front(), e.node);
        dq[e.proc].pop_front();
        break;
      case SimEventKind::steal_back:
        ASSERT_NE(e.victim, e.proc);
        ASSERT_FALSE(dq[e.victim].empty());
        ASSERT_EQ(dq[e.victim].back(), e.node);
        dq[e.victim].pop_back();
        ++steals;
        break;
      case SimEventKind::attempt: ASSERT_NE(e.victim, e.proc); ++attempts; break;
      default: break;
    }
  }
  for (const auto& q : dq) EXPECT_TRUE(q.empty());
  EXPECT_EQ(steals, rep.successful_steals);
  EXPECT_EQ(attempts, rep.steal_attempts);
}

// After a failed attempt, no other processor attempts more than k times
// before the failed processor tries again.
TEST(Rws, AsynchronyWindowHolds) {
  const SPDag d = fork_tree(64, 32);
  for (std::uint32_t k : {1u, 2u, 3u}) {
    SchedulerConfig c = cfg(6, 3);
    c.asynchrony = k;
    c.record_events = true;
    const auto rep = run(d, c, {});
    std::vector<bool> open(6, false);
    std::vector<std::vector<std::uint32_t>> window(6, std::vector<std::uint32_t>(6, 0));
    for (const auto& e : rep.events) {
      if (e.kind == SimEventKind::fail) {
        open[e.proc] = true;
        std::fill(window[e.proc].begin(), window[e.proc].end(), 0u);
      } else if (e.kind == SimEventKind::attempt) {
        open[e.proc] = false;
        for (std::uint32_t q = 0; q < 6; ++q) {
          if (q != e.proc && open[q]) ASSERT_LE(++window[q][e.proc], k);
        }
      }
    }
  }
}

TEST(Rws, StealCostDelaysThief) {
  const SPDag d = fork_tree(64, 16);
  SchedulerConfig cheap = cfg(4, 8), dear = cfg(4, 8);
  cheap.steal_cost = 1;
  dear.steal_cost = 32;
  cheap.jitter = dear.jitter = 0.0;
  EXPECT_LT(run(d, cheap, {}).ticks, run(d, dear, {}).ticks);
}

TEST(Rws, RejectsBadConfig) {
  const SPDag d = leaf(1);
  SchedulerConfig c;
  c.procs = 0;
  EXPECT_THROW(run(d, c, {}), std::invalid_argument);
  c = SchedulerConfig{};
  c.jitter = 1.0;
  EXPECT_THROW(run(d, c, {}), std::invalid_argument);
  c = SchedulerConfig{};
  c.steal_cost = 0;
  EXPECT_THROW(run(d, c, {}), std::invalid_argument);
  EXPECT_THROW(run(d, SchedulerConfig{}, {10, 16}), std::invalid_argument);
  EXPECT_THROW(run(SPDag{}, SchedulerConfig{}, {}), std::invalid_argument);
}
