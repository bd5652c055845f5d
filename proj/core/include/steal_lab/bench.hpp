#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steal_lab/bound.hpp"
#include "steal_lab/cache_sim.hpp"
#include "steal_lab/kernels.hpp"
#include "steal_lab/rws_sim.hpp"

namespace steal_lab {

/// Balanced fork tree over `leaves` leaves of `leaf_work` units; leaf i reads
/// block i.
SPDag fork_tree(std::uint64_t leaves, std::uint32_t leaf_work);

/// Kernel ids plus "fork_tree" (n leaves of n units each).
std::span<const std::string_view> bench_algorithms();
SPDag make_dag(std::string_view alg, std::uint64_t n, std::uint64_t seed, const KernelConfig& cfg);

struct SimulateResult {
  SimReport report;
  std::uint64_t q_1 = 0;
  WorkSpan work_span;
};

/// Scheduler run plus a separate sequential replay for q_1.
SimulateResult simulate(const SPDag& dag, const SchedulerConfig& sched, const CacheConfig& cache);
/// SimReport fields followed by q_1.
std::string simulate_json(const SimulateResult& r);

struct SweepSpec {
  std::string alg;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint32_t> procs{1};
  std::vector<std::uint64_t> m_words{4096};
  std::vector<std::uint64_t> b_words{16};
  std::uint32_t seeds = 1;  // run seeds are seed, seed+1, ...
  std::uint64_t seed = 0;
  std::uint32_t leaf = 8;
  std::uint32_t steal_cost = 4;
  std::uint32_t asynchrony = 2;
  double jitter = 0.1;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Throws std::invalid_argument.
  void validate() const;
};

struct SweepRow {
  std::uint64_t n = 0, P = 0, M = 0, B = 0, seed = 0;
  std::uint64_t W = 0, D = 0;
  std::uint64_t steal_attempts = 0, S = 0;
  std::uint64_t q1 = 0, qp = 0, ticks = 0;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// One row per (n, P, M, B, seed) in that nesting order.
std::vector<SweepRow> sweep(const SweepSpec& spec);

inline constexpr std::string_view kSweepHeader = "n,P,M,B,seed,W,D,steal_attempts,S,q1,qp,ticks";
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
/// Throws std::runtime_error on a malformed file.
std::vector<SweepRow> read_sweep_csv(std::istream& is);

/// Terms of the algorithm's parallel bound that carry a power of P.
BoundExpr overhead_term(std::string_view alg);

struct OverheadRow {
  std::uint64_t n = 0, P = 0, M = 0, B = 0;
  double mean_overhead = 0;  // mean of qp - q1 over seeds
  double mean_steals = 0;
  double predicted = 0;      // overhead_term at (n, P, M, B)
};

std::vector<OverheadRow> overhead(const SweepSpec& spec);

inline constexpr std::string_view kOverheadHeader = "n,P,M,B,mean_overhead,mean_steals,predicted";
void write_overhead_csv(std::ostream& os, std::span<const OverheadRow> rows);

/// printf("%.9g").
std::string format_double(double v);

}  // namespace steal_lab
