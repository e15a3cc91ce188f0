#include <doctest.h>

#include <random>

#include "mdim/kernels.hpp"

namespace k = mdim::kernels;

namespace {

struct Inputs {
  std::vector<std::uint64_t> a, b;
  std::vector<std::uint32_t> cls;
  std::vector<std::uint8_t> row;
};

Inputs random_inputs(std::size_t n, std::mt19937_64& rng) {
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    in.a.push_back(rng());
    in.b.push_back(rng());
    in.cls.push_back(static_cast<std::uint32_t>(rng() % 5000));
    in.row.push_back(static_cast<std::uint8_t>(rng() % 7));
  }
  return in;
}

}  // namespace

TEST_CASE("scalar kernels against direct loops") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 5u, 31u, 32u, 33u, 100u}) {
    const Inputs in = random_inputs(n, rng);
    std::size_t pop = 0, eq = 0;
    for (std::size_t i = 0; i < n; ++i) {
      pop += static_cast<std::size_t>(__builtin_popcountll(in.a[i] & in.b[i]));
      eq += in.row[i] == 3;
    }
    CHECK(k::scalar::and_popcount(in.a, in.b) == pop);
    CHECK(k::scalar::count_equal(in.row, 3) == eq);
    std::vector<std::uint32_t> out(n);
    k::scalar::combine_keys(in.cls, in.row, 9, out);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == in.cls[i] * 9 + in.row[i]);
  }
}

#if defined(MDIM_HAVE_AVX2)
TEST_CASE("avx2 kernels equal scalar kernels") {
  if (!k::isa_supported(k::Isa::avx2)) return;
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n < 300; n += 7) {
    const Inputs in = random_inputs(n, rng);
    CHECK(k::avx2::and_popcount(in.a, in.b) == k::scalar::and_popcount(in.a, in.b));
    for (std::uint8_t v = 0; v < 8; ++v) CHECK(k::avx2::count_equal(in.row, v) == k::scalar::count_equal(in.row, v));
    std::vector<std::uint32_t> x(n), y(n);
    k::avx2::combine_keys(in.cls, in.row, 13, x);
    k::scalar::combine_keys(in.cls, in.row, 13, y);
    CHECK(x == y);
  }
}
#endif

TEST_CASE("dispatch override") {
  k::force_isa(k::Isa::scalar);
  CHECK(k::active_isa() == k::Isa::scalar);
  CHECK(k::isa_name(k::Isa::scalar) == "scalar");
  k::reset_isa();
  CHECK(k::isa_supported(k::Isa::scalar));
  if (!k::isa_supported(k::Isa::avx2)) CHECK_THROWS(k::force_isa(k::Isa::avx2));
}
