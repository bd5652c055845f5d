#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "steal_lab/sp_dag.hpp"

namespace steal_lab {

struct Allocation {
  std::string name;
  std::uint64_t base = 0;   // word address
  std::uint64_t words = 0;
};

/// Flat word-addressed memory shared by all arrays of one generated kernel.
/// Allocations are bump-allocated and aligned to lcm(B, 64) words so that
/// layouts do not depend on allocation order within a block.
class AddressSpace {
 public:
  explicit AddressSpace(std::uint64_t block_words = 16);

  std::uint64_t allocate(std::string name, std::uint64_t words);

  std::uint64_t block_words() const { return block_words_; }
  std::uint64_t words_used() const { return next_; }
  std::span<const Allocation> allocations() const { return allocs_; }
  const Allocation* find(const std::string& name) const;

  BlockId block_of(std::uint64_t word) const { return word / block_words_; }
  /// True iff some allocation overlaps the block.
  bool covers_block(BlockId b) const;

 private:
  std::uint64_t block_words_;
  std::uint64_t align_;
  std::uint64_t next_ = 0;
  std::vector<Allocation> allocs_;
};

}  // namespace steal_lab
