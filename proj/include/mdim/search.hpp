#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "mdim/incidence.hpp"
#include "mdim/metric.hpp"

namespace mdim {

struct SearchBudget {
  double seconds = std::numeric_limits<double>::infinity();
  std::uint64_t nodes = std::numeric_limits<std::uint64_t>::max();
  unsigned threads = 1;
};

// Greedy: repeatedly add the vertex leaving the fewest unseparated vertex
// pairs (lowest index on ties) until every signature is distinct.
VertexSet greedy_upper(const Incidence& inc);

enum class MuStatus { exact, max_k_reached, budget_exhausted };

struct MuResult {
  MuStatus status = MuStatus::budget_exhausted;
  // Exact metric dimension when status == exact.
  std::uint32_t mu = 0;
  // Certified: no resolving set has fewer than lower_bound vertices.
  std::uint32_t lower_bound = 0;
  // Lexicographically first basis (by sorted vertex ids) when exact.
  VertexSet basis;
  std::uint64_t nodes = 0;
};

// Exact metric dimension by pruned depth-first enumeration of k-subsets for
// k = 0, 1, ..., max_k. The node budget is spent deterministically, so the
// outcome does not depend on the thread count; the time budget does.
MuResult exact_mu(const Incidence& inc, std::uint32_t max_k, const SearchBudget& budget = {});

enum class CertifyStatus { no_resolving_set, resolving_set_exists, budget_exhausted };

struct CertifyResult {
  CertifyStatus status = CertifyStatus::budget_exhausted;
  std::optional<VertexSet> witness;  // lexicographically first resolving k-subset
  std::uint64_t nodes = 0;
};

// Whether no k-subset of vertices resolves inc (then mu >= k + 1).
CertifyResult certify_lower(const Incidence& inc, std::uint32_t k, const SearchBudget& budget = {});

}  // namespace mdim
