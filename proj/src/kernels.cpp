#include "mdim/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace mdim::kernels {

namespace {

Isa detect() {
#if defined(MDIM_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  return detect() == Isa::avx2;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("ISA not supported on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

void reset_isa() { current().store(detect(), std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
#if defined(MDIM_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::and_popcount(a, b);
#endif
  return scalar::and_popcount(a, b);
}

void combine_keys(std::span<const std::uint32_t> cls, std::span<const std::uint8_t> row,
                  std::uint32_t radix, std::span<std::uint32_t> out) {
#if defined(MDIM_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::combine_keys(cls, row, radix, out);
#endif
  scalar::combine_keys(cls, row, radix, out);
}

std::size_t count_equal(std::span<const std::uint8_t> row, std::uint8_t value) {
#if defined(MDIM_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::count_equal(row, value);
#endif
  return scalar::count_equal(row, value);
}

}  // namespace mdim::kernels
