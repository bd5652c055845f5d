#pragma once

#include <cstdint>

namespace steal_lab {

/// Spreads the low 32 bits of x to the even bit positions of the result.
constexpr std::uint64_t spread_bits(std::uint64_t x) {
  x &= 0xffffffffULL;
  x = (x | (x << 16)) & 0x0000ffff0000ffffULL;
  x = (x | (x << 8)) & 0x00ff00ff00ff00ffULL;
  x = (x | (x << 4)) & 0x0f0f0f0f0f0f0f0fULL;
  x = (x | (x << 2)) & 0x3333333333333333ULL;
  x = (x | (x << 1)) & 0x5555555555555555ULL;
  return x;
}

/// Bit-interleaved offset without range checks: column bits at even
/// positions, row bits at odd positions.
constexpr std::uint64_t morton_unchecked(std::uint64_t i, std::uint64_t j) {
  return (spread_bits(i) << 1) | spread_bits(j);
}

/// Checked variant; throws std::out_of_range unless 0 <= i, j < n and n is
/// a power of two.
std::uint64_t morton(std::uint64_t i, std::uint64_t j, std::uint64_t n);

/// Inverse of morton_unchecked.
void morton_decode(std::uint64_t offset, std::uint64_t& i, std::uint64_t& j);

constexpr bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace steal_lab
