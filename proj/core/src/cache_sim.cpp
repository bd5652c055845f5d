#include "steal_lab/cache_sim.hpp"

#include <stdexcept>

#include "steal_lab/rws_sim.hpp"

namespace steal_lab {

void CacheConfig::validate() const {
  if (b_words < 1) throw std::invalid_argument("cache: B must be >= 1");
  if (unbounded) return;
  if (m_words < b_words) throw std::invalid_argument("cache: M must be >= B");
  if (m_words % b_words != 0) throw std::invalid_argument("cache: B must divide M");
}

LruCache::LruCache(const CacheConfig& cfg) : capacity_(cfg.unbounded ? 0 : cfg.lines()) {
  cfg.validate();
  if (capacity_ > 0) lines_.reserve(capacity_);
}

std::uint32_t LruCache::slot_of(BlockId b) const {
  if (b < kDenseLimit) return b < dense_.size() ? dense_[b] : kNone;
  const auto it = sparse_.find(b);
  return it == sparse_.end() ? kNone : it->second;
}

void LruCache::set_slot(BlockId b, std::uint32_t s) {
  if (b < kDenseLimit) {
    if (b >= dense_.size()) dense_.resize(std::max<std::size_t>(b + 1, dense_.size() * 2), kNone);
    dense_[b] = s;
  } else if (s == kNone) {
    sparse_.erase(b);
  } else {
    sparse_[b] = s;
  }
}

void LruCache::unlink(std::uint32_t s) {
  Line& l = lines_[s];
  if (l.prev != kNone) lines_[l.prev].next = l.next;
  else head_ = l.next;
  if (l.next != kNone) lines_[l.next].prev = l.prev;
  else tail_ = l.prev;
}

void LruCache::push_front(std::uint32_t s) {
  lines_[s].prev = kNone;
  lines_[s].next = head_;
  if (head_ != kNone) lines_[head_].prev = s;
  head_ = s;
  if (tail_ == kNone) tail_ = s;
}

bool LruCache::access(BlockId b) {
  const std::uint32_t s = slot_of(b);
  if (s != kNone) {
    ++hits_;
    if (s != head_) {
      unlink(s);
      push_front(s);
    }
    return true;
  }
  ++misses_;
  std::uint32_t slot;
  if (capacity_ != 0 && resident_ == capacity_) {
    slot = tail_;
    unlink(slot);
    set_slot(lines_[slot].block, kNone);
  } else {
    slot = static_cast<std::uint32_t>(lines_.size());
    lines_.push_back({});
    ++resident_;
  }
  lines_[slot].block = b;
  push_front(slot);
  set_slot(b, slot);
  return false;
}

std::vector<BlockId> LruCache::recency_order() const {
  std::vector<BlockId> out;
  for (std::uint32_t s = head_; s != kNone; s = lines_[s].next) out.push_back(lines_[s].block);
  return out;
}

std::uint64_t sequential_q1(const SPDag& dag, const CacheConfig& cfg) {
  LruCache cache(cfg);
  for (NodeId v : serial_order(dag)) cache.replay(dag.trace(v));
  return cache.misses();
}

std::uint64_t parallel_qp(const SimReport& report) {
  std::uint64_t q = 0;
  for (auto m : report.per_processor_misses) q += m;
  return q;
}

}  // namespace steal_lab
