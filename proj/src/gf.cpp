#include "mdim/gf.hpp"

#include <stdexcept>
#include <string>

namespace mdim {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t h = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++h;
  }
  if (rest != 1) return std::nullopt;
  return std::pair{static_cast<std::uint32_t>(p), h};
}

namespace {

using Poly = std::vector<std::uint32_t>;  // lowest degree first, no trailing zeros

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is small; Fermat via repeated multiplication.
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits(std::uint64_t value, std::uint32_t p, std::uint32_t len) {
  Poly d(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(value % p);
    value /= p;
  }
  return d;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  // Exhaustive trial division by every monic polynomial of degree 1..n/2.
  for (std::uint32_t d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly g = digits(v, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t h) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < h; ++i) count *= p;
  for (std::uint64_t v = 0; v < count; ++v) {
    Poly f = digits(v, p, h);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FiniteField::FiniteField(std::uint32_t p, std::uint32_t h, std::uint32_t max_order) : p_(p), h_(h) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (h < 1) throw std::invalid_argument("field degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    q *= p;
    if (q > max_order)
      throw std::invalid_argument("field order " + std::to_string(p) + "^" + std::to_string(h) +
                                  " exceeds the maximum " + std::to_string(max_order));
  }
  q_ = static_cast<std::uint32_t>(q);
  modulus_ = smallest_irreducible(p, h);

  neg_.resize(q_);
  for (Element a = 0; a < q_; ++a) {
    Element r = 0, scale = 1, x = a;
    for (std::uint32_t i = 0; i < h_; ++i) {
      r += ((p_ - x % p_) % p_) * scale;
      x /= p_;
      scale *= p_;
    }
    neg_[a] = r;
  }

  // Multiply by x modulo the modulus, on digit vectors.
  auto times_x = [&](Element a) {
    Poly d = digits(a, p_, h_);
    const std::uint32_t top = d[h_ - 1];
    for (std::uint32_t i = h_ - 1; i > 0; --i) d[i] = d[i - 1];
    d[0] = 0;
    for (std::uint32_t i = 0; i < h_; ++i)
      d[i] = static_cast<std::uint32_t>((d[i] + static_cast<std::uint64_t>(p_ - modulus_[i]) * top) % p_);
    Element r = 0, scale = 1;
    for (std::uint32_t i = 0; i < h_; ++i) {
      r += d[i] * scale;
      scale *= p_;
    }
    return r;
  };
  auto scalar_mul = [&](Element a, std::uint32_t c) {
    Poly d = digits(a, p_, h_);
    Element r = 0, scale = 1;
    for (std::uint32_t i = 0; i < h_; ++i) {
      r += static_cast<Element>(static_cast<std::uint64_t>(d[i]) * c % p_) * scale;
      scale *= p_;
    }
    return r;
  };
  // Schoolbook product via Horner over the digits of b.
  auto slow_mul = [&](Element a, Element b) {
    Poly db = digits(b, p_, h_);
    Element r = 0;
    for (std::uint32_t i = h_; i-- > 0;) {
      r = times_x(r);
      r = add_digits(r, scalar_mul(a, db[i]));
    }
    return r;
  };

  // Primitive element: smallest g whose powers reach every nonzero element.
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  for (Element g = 1; g < q_; ++g) {
    std::vector<bool> seen(q_, false);
    Element x = 1;
    bool primitive = true;
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
      if (seen[x]) {
        primitive = false;
        break;
      }
      seen[x] = true;
      exp_[k] = x;
      x = slow_mul(x, g);
    }
    if (primitive && x == 1) break;
    if (g + 1 == q_) throw std::logic_error("no primitive element");
  }
  for (std::uint32_t k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;

  if (q_ <= kDenseTableLimit) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Element a = 0; a < q_; ++a)
      for (Element b = 0; b < q_; ++b) {
        add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(add_digits(a, b));
        Element prod = 0;
        if (a != 0 && b != 0) prod = exp_[(log_[a] + log_[b]) % (q_ - 1)];
        mul_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(prod);
      }
  }
}

FiniteField FiniteField::of_order(std::uint32_t q, std::uint32_t max_order) {
  auto pp = prime_power(q);
  if (!pp) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return FiniteField(pp->first, pp->second, max_order);
}

FiniteField::Element FiniteField::add_digits(Element a, Element b) const {
  if (p_ == 2) return a ^ b;
  Element r = 0, scale = 1;
  for (std::uint32_t i = 0; i < h_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  return add_digits(a, b);
}

FiniteField::Element FiniteField::mul(Element a, Element b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Element FiniteField::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

bool FiniteField::operator==(const FiniteField& other) const {
  return p_ == other.p_ && h_ == other.h_ && modulus_ == other.modulus_;
}

}  // namespace mdim
