#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mdim {

// Exact arithmetic in GF(p^h).
//
// Elements are indices 0..q-1. Index i stands for the polynomial whose
// coefficients are the base-p digits of i, lowest degree first; 0 is the
// additive zero and 1 the multiplicative one. The modulus is the
// lexicographically smallest monic irreducible of degree h (lower
// coefficients read as base-p digits), so equal (p, h) always give equal
// tables.
class FiniteField {
 public:
  using Element = std::uint32_t;

  static constexpr std::uint32_t kDefaultMaxOrder = 1u << 14;
  // Orders up to this bound get dense q x q addition/multiplication tables.
  static constexpr std::uint32_t kDenseTableLimit = 1024;

  FiniteField(std::uint32_t p, std::uint32_t h, std::uint32_t max_order = kDefaultMaxOrder);

  // Factors q as p^h; throws std::invalid_argument when q is not a prime power.
  static FiniteField of_order(std::uint32_t q, std::uint32_t max_order = kDefaultMaxOrder);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return h_; }
  std::uint32_t order() const { return q_; }
  // h+1 coefficients, lowest degree first; the last one is 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Element add(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element neg(Element a) const { return neg_[a]; }
  Element sub(Element a, Element b) const { return add(a, neg_[b]); }
  // Throws std::domain_error for a == 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  bool operator==(const FiniteField& other) const;

 private:
  Element add_digits(Element a, Element b) const;

  std::uint32_t p_;
  std::uint32_t h_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Element> neg_;
  std::vector<Element> exp_;  // exp_[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint16_t> mul_table_;
};

bool is_prime(std::uint64_t n);
// (p, h) with q = p^h, or nullopt.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

}  // namespace mdim
