#pragma once

#include <array>
#include <string>

#include "mdim/geometry.hpp"
#include "mdim/metric.hpp"

namespace mdim {

// Verdicts of the four incidence conditions that characterize resolving
// sets of a projective (P1, P2, P1', P2'), affine (A...) or biaffine (B...)
// plane. Evaluation uses only tangent/skew/cover tallies, never distances.
struct ConditionReport {
  struct Condition {
    std::string name;
    bool ok = true;
    std::string witness;  // first violating object in index order
  };
  PlaneKind kind = PlaneKind::projective;
  std::array<Condition, 4> conditions;

  bool all() const {
    for (const auto& c : conditions)
      if (!c.ok) return false;
    return true;
  }
  // Name of the first failing condition, or empty.
  std::string first_failure() const;
};

// Each throws geometry_error when plane.ctx.kind does not match.
ConditionReport verify_projective(const Plane& plane, const VertexSet& s);
ConditionReport verify_affine(const Plane& plane, const VertexSet& s);
ConditionReport verify_biaffine(const Plane& plane, const VertexSet& s);
// Dispatch on plane.ctx.kind.
ConditionReport verify_conditions(const Plane& plane, const VertexSet& s);

}  // namespace mdim
