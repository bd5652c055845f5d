#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace steal_lab {

/// Element of the (min,+) semiring over integers; kInf is the additive identity.
using Value = std::int64_t;
inline constexpr Value kInf = std::numeric_limits<Value>::max() / 4;
inline constexpr Value kMaxWeight = Value{1} << 20;

constexpr Value sat_add(Value a, Value b) {
  return (a >= kInf || b >= kInf) ? kInf : std::min(a + b, kInf);
}

/// Square matrix in bit-interleaved order: element (i,j) lives at
/// data()[morton(i,j)].
class SemiringMatrix {
 public:
  SemiringMatrix() = default;
  explicit SemiringMatrix(std::uint32_t n, Value fill = kInf);

  static SemiringMatrix from_rows(const std::vector<std::vector<Value>>& rows);
  std::vector<std::vector<Value>> to_rows() const;

  std::uint32_t n() const { return n_; }
  Value at(std::uint32_t i, std::uint32_t j) const;
  void set(std::uint32_t i, std::uint32_t j, Value v);

  std::vector<Value>& data() { return data_; }
  const std::vector<Value>& data() const { return data_; }

  /// Word address of element (0,0) in the kernel's address space.
  std::uint64_t base_address = 0;

  friend bool operator==(const SemiringMatrix& a, const SemiringMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<Value> data_;
};

/// Seeded pure weight function of 2 or 3 indices with values in [0, 2^20).
class WeightOracle {
 public:
  explicit WeightOracle(std::uint64_t seed = 0) : seed_(seed) {}
  Value operator()(std::uint64_t i, std::uint64_t j) const;
  Value operator()(std::uint64_t i, std::uint64_t k, std::uint64_t j) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Uniform weights in [0, 2^20) everywhere.
SemiringMatrix random_matrix(std::uint32_t n, std::uint64_t seed);
/// Adjacency matrix: 0 diagonal, each off-diagonal edge present with
/// probability `density` and weight in [0, 2^20), kInf otherwise.
SemiringMatrix random_digraph(std::uint32_t n, std::uint64_t seed, double density = 0.3);

}  // namespace steal_lab
