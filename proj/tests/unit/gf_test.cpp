#include <doctest.h>

#include "../oracles.hpp"
#include "mdim/gf.hpp"

using mdim::FiniteField;

TEST_CASE("prime fields match arithmetic mod p") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u, 31u}) {
    const FiniteField f(p, 1);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == (a + b) % p);
        CHECK(f.mul(a, b) == (a * b) % p);
      }
  }
}

TEST_CASE("small examples") {
  CHECK(FiniteField(2, 1).add(1, 1) == 0);
  CHECK(FiniteField(5, 1).inv(2) == 3);
  const FiniteField f4(2, 2);
  CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(f4.mul(2, 2) == 3);  // x*x = x+1
  CHECK(f4.inv(2) == 3);
  CHECK(FiniteField(3, 1).add(2, 2) == 1);
}

TEST_CASE("binary extension fields agree with carry-less multiplication") {
  for (std::uint32_t h : {2u, 3u, 4u, 5u}) {
    const FiniteField f(2, h);
    std::uint32_t modulus = 0;
    for (std::uint32_t i = 0; i <= h; ++i) modulus |= f.modulus()[i] << i;
    const std::uint32_t q = f.order();
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == (a ^ b));
        CHECK(f.mul(a, b) == oracle::gf2_mul(a, b, modulus, static_cast<int>(h)));
      }
  }
}

TEST_CASE("moduli are the smallest irreducibles") {
  CHECK(FiniteField(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});  // x^3+x+1
  CHECK(FiniteField(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});     // x^2+1
  CHECK(FiniteField(2, 4).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
}

TEST_CASE("field laws") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u, 49u, 64u}) {
    const FiniteField f = FiniteField::of_order(q);
    CAPTURE(q);
    for (std::uint32_t a = 1; a < q; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f.mul(a, 0) == 0);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
    }
    for (std::uint32_t a = 0; a < q; a += 3)
      for (std::uint32_t b = 0; b < q; b += 2)
        for (std::uint32_t c = 0; c < q; c += 5) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        }
  }
}

TEST_CASE("Frobenius is additive") {
  for (std::uint32_t q : {4u, 8u, 9u, 25u, 27u, 32u, 81u, 121u, 128u, 243u, 256u}) {
    const FiniteField f = FiniteField::of_order(q);
    const std::uint32_t p = f.characteristic();
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) REQUIRE(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
  }
}

TEST_CASE("sparse path above the dense table limit") {
  const FiniteField big = FiniteField::of_order(2048);
  const FiniteField odd = FiniteField::of_order(2197);  // 13^3
  for (const FiniteField* f : {&big, &odd})
    for (std::uint32_t a = 1; a < f->order(); a += 37) {
      CHECK(f->mul(a, f->inv(a)) == 1);
      CHECK(f->pow(a, f->order() - 1) == 1);
    }
}

TEST_CASE("deterministic tables") {
  CHECK(FiniteField(3, 3) == FiniteField(3, 3));
  CHECK(FiniteField::of_order(49) == FiniteField(7, 2));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(FiniteField(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField::of_order(12), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField::of_order(1u << 15), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField(5, 1).inv(0), std::domain_error);
  CHECK(mdim::prime_power(1) == std::nullopt);
  CHECK(mdim::prime_power(343) == std::make_pair(7u, 3u));
}
