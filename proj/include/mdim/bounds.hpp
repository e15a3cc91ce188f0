#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mdim {

enum class Family { projective, affine, biaffine_general, biaffine_desarguesian, grid, gq_general, wq };

const char* to_string(Family f);
// Accepts the names printed by to_string; throws std::invalid_argument otherwise.
Family family_from_string(const std::string& name);

// Exact rational used for non-integer bounds; ceil/floor are exact.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  std::int64_t ceil() const;
  std::int64_t floor() const;
};

// One published bound that applies to the queried parameter.
struct BoundTerm {
  enum Kind { lower, upper, exact };
  Kind kind = lower;
  std::int64_t value = 0;
  std::string formula;     // e.g. "ceil(8q/3-7)"
  std::string condition;   // validity window, e.g. "q>=7"
  std::string provenance;  // which result the term comes from
};

struct BoundEntry {
  Family family = Family::projective;
  std::uint32_t n = 0;  // q, or s for grids
  std::optional<std::int64_t> lower;
  std::optional<std::int64_t> upper;
  std::optional<std::int64_t> exact;
  std::vector<BoundTerm> terms;  // only the terms whose conditions hold
};

// Throws std::invalid_argument for n < 1 (grid) or n < 2 (other families).
BoundEntry bounds_for(Family family, std::uint32_t n);

// How a computed number relates to the metric dimension.
enum class Computed {
  value,        // the metric dimension itself
  upper_bound,  // size of a verified resolving set
  lower_bound,  // certified: no smaller resolving set exists
};

struct CrossCheck {
  bool ok = true;
  std::string finding;  // describes the violated bound
};

CrossCheck crosscheck(const BoundEntry& entry, std::int64_t computed, Computed kind = Computed::value);

// floor(sqrt(n)) and ceil(sqrt(n)) in integer arithmetic.
std::uint64_t isqrt_floor(std::uint64_t n);
std::uint64_t isqrt_ceil(std::uint64_t n);

}  // namespace mdim
