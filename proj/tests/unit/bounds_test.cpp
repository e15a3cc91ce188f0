#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mdim/bounds.hpp"
#include "mdim/gf.hpp"

using namespace mdim;

namespace {

// Smallest integer m with m > 3q - 9 sqrt(q), by direct search.
std::int64_t above_3q_minus_9_root(std::int64_t q) {
  for (std::int64_t m = 0;; ++m) {
    const std::int64_t gap = 3 * q - m;
    if (gap < 0 || gap * gap < 81 * q) return m;
  }
}

// Smallest integer m with 3m >= 8q - 21.
std::int64_t at_least_8q_over_3_minus_7(std::int64_t q) {
  std::int64_t m = -100;
  while (3 * m < 8 * q - 21) ++m;
  return m;
}

}  // namespace

TEST_CASE("table rows") {
  CHECK(bounds_for(Family::affine, 13).exact == 35);
  CHECK_FALSE(bounds_for(Family::affine, 11).exact);
  CHECK(bounds_for(Family::projective, 13).exact == 48);
  CHECK(bounds_for(Family::grid, 6).exact == 9);
  CHECK(bounds_for(Family::grid, 1).exact == 2);  // GQ(1,1) is an 8-cycle
  CHECK(bounds_for(Family::gq_general, 7).lower == 21);
  CHECK(bounds_for(Family::gq_general, 3).lower == 5);
  CHECK(bounds_for(Family::wq, 3).upper == 23);
  CHECK(bounds_for(Family::wq, 4).upper == 32);
  const BoundEntry b5 = bounds_for(Family::biaffine_desarguesian, 5);
  CHECK(b5.exact == 9);
  CHECK(b5.lower == 8);
  CHECK(b5.upper == 9);
  CHECK_FALSE(bounds_for(Family::biaffine_general, 5).exact);
  CHECK_THROWS_AS(bounds_for(Family::affine, 1), std::invalid_argument);
  CHECK_THROWS_AS(bounds_for(Family::grid, 0), std::invalid_argument);
}

TEST_CASE("biaffine lower bound is the maximum of the applicable terms") {
  for (std::int64_t q = 2; q <= 3000; ++q) {
    const auto pp = prime_power(static_cast<std::uint64_t>(q));
    if (!pp) continue;
    const auto [p, h] = *pp;
    std::int64_t expect = 2 * q - 2;
    if (q >= 7) expect = std::max(expect, at_least_8q_over_3_minus_7(q));
    if ((h == 1 && p >= 17) || (h >= 2 && p >= 400)) expect = std::max(expect, above_3q_minus_9_root(q));
    const BoundEntry e = bounds_for(Family::biaffine_desarguesian, static_cast<std::uint32_t>(q));
    CAPTURE(q);
    CHECK(e.lower == expect);
    if (q >= 4) CHECK(*e.lower <= *e.upper);
  }
}

TEST_CASE("rounding helpers") {
  CHECK(Rational{7, 3}.ceil() == 3);
  CHECK(Rational{-7, 3}.ceil() == -2);
  CHECK(Rational{-7, 3}.floor() == -3);
  CHECK(Rational{6, 3}.ceil() == 2);
  for (std::uint64_t n = 0; n < 5000; ++n) {
    const auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    CHECK(isqrt_floor(n) == r);
    CHECK(isqrt_ceil(n) == (r * r == n ? r : r + 1));
  }
  CHECK(isqrt_floor(~0ull) == 4294967295ull);
}

TEST_CASE("cross-checks") {
  CHECK(crosscheck(bounds_for(Family::biaffine_desarguesian, 5), 9).ok);
  CHECK(crosscheck(bounds_for(Family::grid, 3), 5).ok);
  const CrossCheck bad = crosscheck(bounds_for(Family::biaffine_desarguesian, 3), 3);
  CHECK_FALSE(bad.ok);
  CHECK(bad.finding.rfind("critical:", 0) == 0);
  CHECK(crosscheck(bounds_for(Family::wq, 3), 23, Computed::upper_bound).ok);
  CHECK(crosscheck(bounds_for(Family::wq, 3), 5, Computed::lower_bound).ok);
  CHECK_FALSE(crosscheck(bounds_for(Family::wq, 3), 4, Computed::upper_bound).ok);
  CHECK_FALSE(crosscheck(bounds_for(Family::grid, 3), 6, Computed::lower_bound).ok);
}

TEST_CASE("family names round-trip") {
  for (Family f : {Family::projective, Family::affine, Family::biaffine_general, Family::biaffine_desarguesian, Family::grid,
                   Family::gq_general, Family::wq})
    CHECK(family_from_string(to_string(f)) == f);
  CHECK_THROWS_AS(family_from_string("plane"), std::invalid_argument);
}
