#include "steal_lab/morton.hpp"

#include <stdexcept>
#include <string>

namespace steal_lab {

std::uint64_t morton(std::uint64_t i, std::uint64_t j, std::uint64_t n) {
  if (!is_pow2(n)) throw std::out_of_range("morton: n=" + std::to_string(n) + " is not a power of two");
  if (i >= n || j >= n) {
    throw std::out_of_range("morton: index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range for n=" + std::to_string(n));
  }
  return morton_unchecked(i, j);
}

namespace {

std::uint64_t compact_bits(std::uint64_t x) {
  x &= 0x5555555555555555ULL;
  x = (x | (x >> 1)) & 0x3333333333333333ULL;
  x = (x | (x >> 2)) & 0x0f0f0f0f0f0f0f0fULL;
  x = (x | (x >> 4)) & 0x00ff00ff00ff00ffULL;
  x = (x | (x >> 8)) & 0x0000ffff0000ffffULL;
  x = (x | (x >> 16)) & 0x00000000ffffffffULL;
  return x;
}

}  // namespace

void morton_decode(std::uint64_t offset, std::uint64_t& i, std::uint64_t& j) {
  j = compact_bits(offset);
  i = compact_bits(offset >> 1);
}

}  // namespace steal_lab
