#include <gtest/gtest.h>

#include <algorithm>
#include <list>
#include <random>
#include <set>

#include "steal_lab/cache_sim.hpp"

using namespace steal_lab;

namespace {

std::vector<BlockId> random_trace(std::mt19937_64& rng, std::size_t len, BlockId universe) {
  std::vector<BlockId> t(len);
  // mix of a hot set and uniform draws
  for (auto& b : t) b = (rng() % 3 == 0) ? rng() % universe : rng() % (universe / 8 + 1);
  return t;
}

}  // namespace

TEST(LruProperty, MatchesListOracle) {
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 100; ++iter) {
    const std::uint64_t lines = 1 + rng() % 32;
    LruCache c({lines * 16, 16});
    std::list<BlockId> ref;
    std::uint64_t misses = 0;
    for (BlockId b : random_trace(rng, 2000, 200)) {
      auto it = std::find(ref.begin(), ref.end(), b);
      const bool hit = it != ref.end();
      if (hit) {
        ref.erase(it);
      } else {
        ++misses;
        if (ref.size() == lines) ref.pop_back();
      }
      ref.push_front(b);
      ASSERT_EQ(c.access(b), hit);
      ASSERT_LE(c.resident(), lines);
    }
    ASSERT_EQ(c.misses(), misses);
    ASSERT_EQ(c.recency_order(), std::vector<BlockId>(ref.begin(), ref.end()));
  }
}

// A larger LRU cache always holds a superset of a smaller one.
TEST(LruProperty, InclusionAndMonotoneMisses) {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 50; ++iter) {
    const std::uint64_t small = 1 + rng() % 16;
    LruCache a({small * 16, 16}), b({small * 2 * 16, 16}), inf(CacheConfig::infinite(16));
    for (BlockId x : random_trace(rng, 3000, 500)) {
      a.access(x);
      b.access(x);
      inf.access(x);
      const auto ra = a.recency_order();
      for (BlockId y : ra) ASSERT_TRUE(b.contains(y));
      ASSERT_GE(a.misses(), b.misses());
      ASSERT_GE(b.misses(), inf.misses());
    }
  }
}

TEST(LruProperty, UnboundedMissesAreDistinctBlocks) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    const auto t = random_trace(rng, 5000, BlockId{1} << 30);
    LruCache c(CacheConfig::infinite(16));
    c.replay(t);
    EXPECT_EQ(c.misses(), std::set<BlockId>(t.begin(), t.end()).size());
  }
}
