#include <gtest/gtest.h>

#include <set>

#include "steal_lab/bench.hpp"
#include "steal_lab/cache_sim.hpp"
#include "steal_lab/kernels.hpp"

using namespace steal_lab;

TEST(Lru, ConfigValidation) {
  EXPECT_THROW((CacheConfig{64, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((CacheConfig{8, 16}.validate()), std::invalid_argument);
  EXPECT_THROW((CacheConfig{100, 16}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((CacheConfig{64, 16}.validate()));
  EXPECT_NO_THROW(CacheConfig::infinite(16).validate());
}

TEST(Lru, ColdScanMissesEveryBlock) {
  LruCache c({64, 16});
  for (BlockId b = 0; b < 10; ++b) EXPECT_FALSE(c.access(b));
  EXPECT_EQ(c.misses(), 10u);
  EXPECT_EQ(c.resident(), 4u);
}

TEST(Lru, RepeatWithinCapacityHits) {
  LruCache c({64, 16});
  for (int rep = 0; rep < 2; ++rep)
    for (BlockId b = 0; b < 4; ++b) c.access(b);
  EXPECT_EQ(c.misses(), 4u);
  EXPECT_EQ(c.hits(), 4u);
}

TEST(Lru, CyclicScanOneOverCapacityAlwaysMisses) {
  LruCache c({64, 16});
  for (int rep = 0; rep < 3; ++rep)
    for (BlockId b = 0; b < 5; ++b) c.access(b);
  EXPECT_EQ(c.misses(), 15u);
}

TEST(Lru, RecencyOrder) {
  LruCache c({48, 16});
  c.access(1);
  c.access(2);
  c.access(3);
  c.access(1);
  EXPECT_EQ(c.recency_order(), (std::vector<BlockId>{1, 3, 2}));
  c.access(4);
  EXPECT_FALSE(c.contains(2));
  EXPECT_EQ(c.recency_order(), (std::vector<BlockId>{4, 1, 3}));
}

TEST(Lru, SparseBlockIds) {
  LruCache c({32, 16});
  const BlockId big = BlockId{1} << 40;
  c.access(big);
  c.access(3);
  EXPECT_TRUE(c.access(big));
  c.access(big + 1);
  EXPECT_FALSE(c.contains(3));
}

TEST(Lru, UnboundedCountsDistinctBlocks) {
  const auto r = generate("mm", 32, 1);
  std::set<BlockId> distinct;
  for (NodeId v = 0; v < r.dag.size(); ++v)
    for (BlockId b : r.dag.trace(v)) distinct.insert(b);
  EXPECT_EQ(sequential_q1(r.dag, CacheConfig::infinite(16)), distinct.size());
}

TEST(SequentialQ1, MmSmallFitsInCache) {
  // 3 n^2 words fit in M: only compulsory misses, about 3 n^2 / B plus temporaries
  for (std::uint64_t n : {8u, 16u, 32u}) {
    const auto r = generate("mm", n, 1);
    const double q1 = static_cast<double>(sequential_q1(r.dag, {1 << 16, 16}));
    const double cold = 3.0 * n * n / 16;
    EXPECT_GE(q1, cold);
    EXPECT_LE(q1, 2.5 * cold);
  }
}

TEST(SequentialQ1, MonotoneInCacheSize) {
  const auto r = generate("kleene", 32, 2);
  std::uint64_t prev = ~0ull;
  for (std::uint64_t m = 256; m <= 1 << 14; m *= 2) {
    const auto q = sequential_q1(r.dag, {m, 16});
    EXPECT_LE(q, prev);
    prev = q;
  }
}

TEST(SequentialQ1, ForkTreeTouchesEachLeafBlockOnce) {
  const SPDag d = fork_tree(64, 4);
  EXPECT_EQ(sequential_q1(d, {64, 16}), 64u);
}
