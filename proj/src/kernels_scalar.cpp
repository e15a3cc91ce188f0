#include "mdim/kernels.hpp"

#include <bit>

namespace mdim::kernels::scalar {

std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

void combine_keys(std::span<const std::uint32_t> cls, std::span<const std::uint8_t> row,
                  std::uint32_t radix, std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < cls.size(); ++i) out[i] = cls[i] * radix + row[i];
}

std::size_t count_equal(std::span<const std::uint8_t> row, std::uint8_t value) {
  std::size_t n = 0;
  for (auto x : row) n += (x == value);
  return n;
}

}  // namespace mdim::kernels::scalar
