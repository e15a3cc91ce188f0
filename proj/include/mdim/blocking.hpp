#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdim/geometry.hpp"
#include "mdim/incidence.hpp"
#include "mdim/metric.hpp"

namespace mdim {

struct BlockingReport {
  bool is_blocking = false;
  std::size_t delta = 0;               // lines skew to B
  std::vector<std::size_t> index;      // per point: skew lines through it
  std::vector<Index> essential;        // points of B on a tangent line
};

BlockingReport analyze_blocking(const Incidence& inc, const std::vector<Index>& b);

enum class ExtendStatus { extendable, not_extendable, budget_exhausted };

struct ExtendResult {
  ExtendStatus status = ExtendStatus::budget_exhausted;
  std::vector<Index> extender;  // k points, sorted, when extendable
  std::uint64_t nodes = 0;
};

// Whether adding k points to b yields a blocking set. Branches on the points
// of the first skew line, so only points on skew lines are ever added.
ExtendResult k_extendable(const Incidence& inc, const std::vector<Index>& b, std::uint32_t k,
                          std::uint64_t node_budget = 10000000);

// Smallest k <= max_k for which b is k-extendable (b is then k-punctured),
// with the index inequalities for its extender K:
//   ind(P) <= k for P not in K, ind(P) >= 2q - |b| - k + 1 for P in K.
struct PuncturedCheck {
  ExtendStatus status = ExtendStatus::budget_exhausted;  // extendable: k found
  std::uint32_t k = 0;
  std::vector<Index> extender;
  bool inequalities_hold = true;
  std::string violation;
};
PuncturedCheck punctured_check(const Incidence& pg, const std::vector<Index>& b, std::uint32_t max_k,
                               std::uint64_t node_budget = 10000000);

// For a resolving set s of a biaffine plane with |s| <= 3q-(k+u+3) and
// c < 2q-|P_S|-k, P_S must not be k-extendable in the ambient plane.
struct NotExtendableCheck {
  bool hypotheses = false;
  ExtendStatus status = ExtendStatus::not_extendable;
  bool ok = true;  // hypotheses imply not_extendable
};
NotExtendableCheck not_extendable_check(const Plane& bg, const VertexSet& s, std::uint32_t k);

// Minimum blocking set of a small plane by exhaustive branching.
struct MinBlocking {
  std::uint32_t tau = 0;
  std::vector<Index> witness;
  std::uint64_t nodes = 0;
};
// Throws std::invalid_argument for more than kMinBlockingPointLimit points.
inline constexpr std::size_t kMinBlockingPointLimit = 64;
MinBlocking min_blocking(const Incidence& inc);

// All minimal blocking sets (no proper subset blocks), each sorted, in
// lexicographic order. Exhaustive over subsets; at most 24 points.
std::vector<std::vector<Index>> minimal_blocking_sets(const Incidence& inc);

struct InequalityCheck {
  bool ok = true;
  std::string violation;  // first failing point with the values involved
};

// Every essential point of a blocking set b of PG(2,q) lies on at least
// 2q+1-|b| tangents. Throws std::invalid_argument when b does not block.
InequalityCheck tangent_bound_check(const Incidence& pg, const std::vector<Index>& b);

// ind(P)^2 - (2q+1-|b|) ind(P) + delta >= 0 for every point P not in b.
InequalityCheck metsch_check(const Incidence& pg, const std::vector<Index>& b);

}  // namespace mdim
