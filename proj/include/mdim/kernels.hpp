#pragma once

// Data-parallel inner loops shared by the verifiers and the exact search.
//
// Every kernel has a portable scalar reference implementation; on x86-64 an
// AVX2 variant is compiled separately and selected at runtime when the CPU
// reports support. Both variants must produce identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mdim::kernels {

enum class Isa { scalar, avx2 };

// Number of set bits in (a & b). Both spans must have the same length.
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// out[i] = cls[i] * radix + row[i]
void combine_keys(std::span<const std::uint32_t> cls, std::span<const std::uint8_t> row,
                  std::uint32_t radix, std::span<std::uint32_t> out);

// Number of i with row[i] == value.
std::size_t count_equal(std::span<const std::uint8_t> row, std::uint8_t value);

// The ISA used by the dispatching entry points above.
Isa active_isa();
bool isa_supported(Isa isa);
// Override dispatch (tests, benchmarking). Throws if the ISA is unsupported.
void force_isa(Isa isa);
void reset_isa();
std::string_view isa_name(Isa isa);

namespace scalar {
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void combine_keys(std::span<const std::uint32_t> cls, std::span<const std::uint8_t> row,
                  std::uint32_t radix, std::span<std::uint32_t> out);
std::size_t count_equal(std::span<const std::uint8_t> row, std::uint8_t value);
}  // namespace scalar

#if defined(MDIM_HAVE_AVX2)
namespace avx2 {
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void combine_keys(std::span<const std::uint32_t> cls, std::span<const std::uint8_t> row,
                  std::uint32_t radix, std::span<std::uint32_t> out);
std::size_t count_equal(std::span<const std::uint8_t> row, std::uint8_t value);
}  // namespace avx2
#endif

}  // namespace mdim::kernels
