#include "steal_lab/semiring.hpp"

#include <random>
#include <stdexcept>

#include "steal_lab/morton.hpp"

namespace steal_lab {

SemiringMatrix::SemiringMatrix(std::uint32_t n, Value fill) : n_(n) {
  if (!is_pow2(n)) throw std::invalid_argument("SemiringMatrix: n must be a power of two");
  data_.assign(std::uint64_t{n} * n, fill);
}

SemiringMatrix SemiringMatrix::from_rows(const std::vector<std::vector<Value>>& rows) {
  SemiringMatrix m(static_cast<std::uint32_t>(rows.size()));
  for (std::uint32_t i = 0; i < m.n_; ++i) {
    if (rows[i].size() != m.n_) throw std::invalid_argument("from_rows: matrix is not square");
    for (std::uint32_t j = 0; j < m.n_; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

std::vector<std::vector<Value>> SemiringMatrix::to_rows() const {
  std::vector<std::vector<Value>> rows(n_, std::vector<Value>(n_));
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint32_t j = 0; j < n_; ++j) rows[i][j] = at(i, j);
  }
  return rows;
}

Value SemiringMatrix::at(std::uint32_t i, std::uint32_t j) const { return data_[morton(i, j, n_)]; }
void SemiringMatrix::set(std::uint32_t i, std::uint32_t j, Value v) { data_[morton(i, j, n_)] = v; }

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Value WeightOracle::operator()(std::uint64_t i, std::uint64_t j) const {
  return static_cast<Value>(mix(mix(mix(seed_) ^ i) ^ (j * 0x632be59bd9b4e019ULL)) % kMaxWeight);
}

Value WeightOracle::operator()(std::uint64_t i, std::uint64_t k, std::uint64_t j) const {
  return static_cast<Value>(
      mix(mix(mix(mix(seed_ ^ 0x5bd1e995ULL) ^ i) ^ (k * 0x632be59bd9b4e019ULL)) ^ j) % kMaxWeight);
}

SemiringMatrix random_matrix(std::uint32_t n, std::uint64_t seed) {
  SemiringMatrix m(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Value> dist(0, kMaxWeight - 1);
  for (auto& v : m.data()) v = dist(rng);
  return m;
}

SemiringMatrix random_digraph(std::uint32_t n, std::uint64_t seed, double density) {
  SemiringMatrix m(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Value> dist(0, kMaxWeight - 1);
  std::bernoulli_distribution edge(density);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const bool present = edge(rng);
      const Value w = dist(rng);
      m.set(i, j, i == j ? 0 : (present ? w : kInf));
    }
  }
  return m;
}

}  // namespace steal_lab
