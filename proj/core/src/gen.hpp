#pragma once

// Shared machinery for the kernel generators: views over arrays laid out in
// the kernel's address space, leaf trace construction and the recursive
// primitives that the value kernels and the skeletons both use.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "steal_lab/kernels.hpp"
#include "steal_lab/morton.hpp"

namespace steal_lab::detail {

/// Window of a Morton-ordered matrix. Rows/columns may start anywhere; a view
/// with row0, col0 multiples of size is a contiguous quadrant.
struct MatView {
  Value* data = nullptr;  // null for trace-only views
  std::uint64_t addr = 0;
  std::uint64_t row0 = 0;
  std::uint64_t col0 = 0;
  std::uint64_t size = 0;

  std::uint64_t off(std::uint64_t i, std::uint64_t j) const { return morton_unchecked(row0 + i, col0 + j); }
  std::uint64_t word(std::uint64_t i, std::uint64_t j) const { return addr + off(i, j); }
  Value& at(std::uint64_t i, std::uint64_t j) const { return data[off(i, j)]; }
  MatView quad(std::uint64_t qi, std::uint64_t qj) const {
    const std::uint64_t h = size / 2;
    return {data, addr, row0 + qi * h, col0 + qj * h, h};
  }
  MatView sub(std::uint64_t r, std::uint64_t c, std::uint64_t s) const { return {data, addr, r, c, s}; }
  bool aligned() const { return row0 % size == 0 && col0 % size == 0; }
};

enum class VecLayout : std::uint8_t { contiguous, row, col };

/// 1-d window: a contiguous array range, or a row/column segment of a
/// Morton matrix.
struct VecView {
  Value* data = nullptr;
  std::uint64_t addr = 0;
  VecLayout layout = VecLayout::contiguous;
  std::uint64_t fixed = 0;
  std::uint64_t start = 0;
  std::uint64_t size = 0;

  std::uint64_t off(std::uint64_t i) const {
    switch (layout) {
      case VecLayout::row: return morton_unchecked(fixed, start + i);
      case VecLayout::col: return morton_unchecked(start + i, fixed);
      default: return start + i;
    }
  }
  std::uint64_t word(std::uint64_t i) const { return addr + off(i); }
  Value& at(std::uint64_t i) const { return data[off(i)]; }
  VecView sub(std::uint64_t lo, std::uint64_t len) const {
    VecView v = *this;
    v.start += lo;
    v.size = len;
    return v;
  }
};

inline VecView row_of(const MatView& m, std::uint64_t r) {
  return {m.data, m.addr, VecLayout::row, m.row0 + r, m.col0, m.size};
}
inline VecView col_of(const MatView& m, std::uint64_t c) {
  return {m.data, m.addr, VecLayout::col, m.col0 + c, m.row0, m.size};
}

/// Weight w(ib+i, kb+k, jb+j) added to each product; absent for plain MM.
struct MMWeight {
  const WeightOracle* w = nullptr;
  std::uint64_t ib = 0, kb = 0, jb = 0;
  MMWeight shift(std::uint64_t di, std::uint64_t dk, std::uint64_t dj) const {
    return {w, ib + di, kb + dk, jb + dj};
  }
};

struct GridWeight {
  const WeightOracle* w = nullptr;
  std::uint64_t ib = 0, jb = 0;
  GridWeight shift(std::uint64_t di, std::uint64_t dj) const { return {w, ib + di, jb + dj}; }
};

/// Distinct blocks in first-touch order.
class TraceBuilder {
 public:
  explicit TraceBuilder(std::uint64_t block_words) : b_(block_words) {}
  void touch(std::uint64_t word) {
    const BlockId blk = word / b_;
    if (blk == last_) return;
    last_ = blk;
    if (blocks_.size() < 32) {
      for (BlockId x : blocks_) {
        if (x == blk) return;
      }
      blocks_.push_back(blk);
      if (blocks_.size() == 32) seen_.insert(blocks_.begin(), blocks_.end());
    } else if (seen_.insert(blk).second) {
      blocks_.push_back(blk);
    }
  }
  const std::vector<BlockId>& blocks() const { return blocks_; }

 private:
  std::uint64_t b_;
  BlockId last_ = ~BlockId{0};
  std::vector<BlockId> blocks_;
  std::unordered_set<BlockId> seen_;
};

class Gen {
 public:
  Gen(const KernelConfig& cfg, AddressSpace& space);

  DagBuilder& builder() { return b_; }
  std::uint64_t leaf_size() const { return t_; }
  std::uint64_t block_words() const { return bw_; }

  MatView alloc_matrix(const std::string& name, std::uint64_t n, Value* data);
  VecView alloc_vector(const std::string& name, std::uint64_t m, Value* data);
  /// Temporaries are shared by every call of the same kind and size, like a
  /// stack frame reused by sibling calls. `values` selects whether backing
  /// storage is allocated.
  MatView scratch_matrix(const std::string& kind, std::uint64_t n, bool values);
  VecView scratch_vector(const std::string& kind, std::uint64_t m, bool values);

  Fragment leaf(std::uint64_t work, const std::vector<BlockId>& trace);
  Fragment par(std::initializer_list<Fragment> parts);
  Fragment par(const std::vector<Fragment>& parts);
  Fragment ser(std::initializer_list<Fragment> parts);

  void begin(const char* tag, std::uint64_t size) { b_.begin_call(tag, size); }
  void end() { b_.end_call(); }

  // Primitives. Values are updated when the written view has storage.
  Fragment mm(const MatView& c, const MatView& a, const MatView& b, bool overwrite, const MMWeight& w);
  Fragment merge(const MatView& c, const MatView& t);
  Fragment mt(const MatView& a, const MatView& o);
  Fragment grid(const VecView& in, const VecView& out, bool overwrite, const GridWeight& w);
  Fragment merge(const VecView& out, const VecView& t);
  Fragment kleene(const MatView& a);
  /// Floyd-Warshall on a tile; also the trace of tile-local DP leaves.
  Fragment closure_leaf(const MatView& a);

  Fragment mm_leaf(const MatView& c, const MatView& a, const MatView& b, bool overwrite, const MMWeight& w);

  SPDag finish(Fragment whole) && { return std::move(b_).finish(whole); }

 private:
  enum class LeafKind : std::uint8_t { mm, merge, fw, mt };
  using Pattern = std::vector<std::pair<std::uint8_t, std::int64_t>>;
  struct PatternKey {
    LeafKind kind;
    std::uint64_t n;
    std::array<std::uint64_t, 3> mods;
    auto operator<=>(const PatternKey&) const = default;
  };

  /// Blocks of an aligned tile leaf, via a cached (operand, block delta)
  /// pattern that depends only on the tile bases modulo B.
  std::vector<BlockId> tile_trace(LeafKind kind, std::uint64_t n, std::span<const MatView> ops);

  std::uint64_t t_;
  std::uint64_t bw_;
  AddressSpace& space_;
  DagBuilder b_;
  std::map<PatternKey, Pattern> patterns_;
  struct Scratch {
    std::uint64_t addr = 0;
    std::vector<Value> data;
  };
  std::map<std::pair<std::string, std::uint64_t>, Scratch> scratch_;
};

/// Visits the element accesses of a tile leaf in loop order as (operand, i, j).
template <class F>
void for_each_tile_access(std::uint8_t kind, std::uint64_t n, F&& f) {
  switch (kind) {
    case 0:  // mm: C(i,j) A(i,k) B(k,j)
      for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
          f(0, i, j);
          for (std::uint64_t k = 0; k < n; ++k) {
            f(1, i, k);
            f(2, k, j);
          }
        }
      break;
    case 1:  // merge: C(i,j) T(i,j)
      for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
          f(0, i, j);
          f(1, i, j);
        }
      break;
    case 2:  // closure: A(i,j) A(i,k) A(k,j)
      for (std::uint64_t k = 0; k < n; ++k)
        for (std::uint64_t i = 0; i < n; ++i)
          for (std::uint64_t j = 0; j < n; ++j) {
            f(0, i, j);
            f(0, i, k);
            f(0, k, j);
          }
      break;
    case 3:  // transpose: A(i,j) O(j,i)
      for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
          f(0, i, j);
          f(1, j, i);
        }
      break;
  }
}

}  // namespace steal_lab::detail
