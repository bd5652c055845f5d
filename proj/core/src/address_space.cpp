#include "steal_lab/address_space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace steal_lab {

AddressSpace::AddressSpace(std::uint64_t block_words)
    : block_words_(block_words), align_(std::lcm(block_words, std::uint64_t{64})) {
  if (block_words == 0) throw std::invalid_argument("AddressSpace: block size must be >= 1");
}

std::uint64_t AddressSpace::allocate(std::string name, std::uint64_t words) {
  const std::uint64_t base = (next_ + align_ - 1) / align_ * align_;
  next_ = base + std::max<std::uint64_t>(words, 1);
  allocs_.push_back({std::move(name), base, words});
  return base;
}

const Allocation* AddressSpace::find(const std::string& name) const {
  for (const auto& a : allocs_) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

bool AddressSpace::covers_block(BlockId b) const {
  const std::uint64_t lo = b * block_words_;
  const std::uint64_t hi = lo + block_words_;
  // allocations are sorted by base
  auto it = std::upper_bound(allocs_.begin(), allocs_.end(), lo,
                             [](std::uint64_t w, const Allocation& a) { return w < a.base; });
  if (it != allocs_.end() && it->base < hi && it->words > 0) return true;
  if (it == allocs_.begin()) return false;
  --it;
  return lo < it->base + it->words;
}

}  // namespace steal_lab
