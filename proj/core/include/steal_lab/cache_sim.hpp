#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "steal_lab/sp_dag.hpp"

namespace steal_lab {

struct CacheConfig {
  std::uint64_t m_words = 4096;
  std::uint64_t b_words = 16;
  bool unbounded = false;  // M/B = infinity

  std::uint64_t lines() const { return m_words / b_words; }
  /// Throws std::invalid_argument unless B >= 1, M >= B and B divides M.
  void validate() const;
  static CacheConfig infinite(std::uint64_t b_words) { return {0, b_words, true}; }
};

/// Fully associative LRU cache over block ids.
class LruCache {
 public:
  explicit LruCache(const CacheConfig& cfg);

  /// True on hit. The block is most recent afterwards.
  bool access(BlockId b);
  void replay(std::span<const BlockId> trace) {
    for (BlockId b : trace) access(b);
  }

  bool contains(BlockId b) const { return slot_of(b) != kNone; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t resident() const { return resident_; }
  std::uint64_t capacity() const { return capacity_; }
  /// Resident blocks, most recent first.
  std::vector<BlockId> recency_order() const;

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  static constexpr BlockId kDenseLimit = BlockId{1} << 26;

  std::uint32_t slot_of(BlockId b) const;
  void set_slot(BlockId b, std::uint32_t s);
  void unlink(std::uint32_t s);
  void push_front(std::uint32_t s);

  struct Line {
    BlockId block;
    std::uint32_t prev, next;
  };
  std::uint64_t capacity_;  // 0 = unbounded
  std::vector<Line> lines_;
  std::uint32_t head_ = kNone, tail_ = kNone;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<BlockId, std::uint32_t> sparse_;
  std::uint64_t resident_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t hits_ = 0;
};

/// Misses of one cold cache replaying the traces in serial_order.
std::uint64_t sequential_q1(const SPDag& dag, const CacheConfig& cfg);

struct SimReport;
/// Sum of per-processor misses.
std::uint64_t parallel_qp(const SimReport& report);

}  // namespace steal_lab
