#include "mdim/characterizations.hpp"

#include <algorithm>

#include "mdim/kernels.hpp"

namespace mdim {

std::string ConditionReport::first_failure() const {
  for (const auto& c : conditions)
    if (!c.ok) return c.name;
  return {};
}

namespace {

// Per-line |[l] n P_S| and per-point |[P] n L_S|.
struct Tallies {
  Bitset inner_point, inner_line;
  std::vector<std::uint32_t> meet;   // per line
  std::vector<std::uint32_t> cover;  // per point

  Tallies(const Incidence& inc, const VertexSet& s) : inner_point(inc.num_points()), inner_line(inc.num_lines()) {
    s.validate(inc);
    for (Index p : s.points) inner_point.set(p);
    for (Index l : s.lines) inner_line.set(l);
    meet.resize(inc.num_lines());
    cover.resize(inc.num_points());
    for (Index j = 0; j < inc.num_lines(); ++j)
      meet[j] = static_cast<std::uint32_t>(kernels::and_popcount(inc.line_bits(j).words(), inner_point.words()));
    for (Index p = 0; p < inc.num_points(); ++p)
      cover[p] = static_cast<std::uint32_t>(kernels::and_popcount(inc.point_bits(p).words(), inner_line.words()));
  }
};

// Dense slots for direction and class ids.
struct Slots {
  std::vector<Index> ids;
  explicit Slots(std::vector<Index> sorted) : ids(std::move(sorted)) {}
  std::size_t operator()(Index id) const {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  }
  std::size_t size() const { return ids.size(); }
};

void fail(ConditionReport::Condition& c, std::string witness) {
  if (!c.ok) return;
  c.ok = false;
  c.witness = std::move(witness);
}

void require_kind(const Plane& plane, PlaneKind kind) {
  if (plane.ctx.kind != kind)
    throw geometry_error(std::string("expected a ") + to_string(kind) + " plane, got " + to_string(plane.ctx.kind));
}

// "At most one outer point uncovered": the witness is the second offender.
template <typename Pred>
void at_most_one_point(const Incidence& inc, ConditionReport::Condition& c, Pred pred) {
  bool seen = false;
  for (Index p = 0; p < inc.num_points(); ++p)
    if (pred(p)) {
      if (seen) return fail(c, "point " + std::to_string(p));
      seen = true;
    }
}

template <typename Pred>
void at_most_one_line(const Incidence& inc, ConditionReport::Condition& c, Pred pred) {
  bool seen = false;
  for (Index j = 0; j < inc.num_lines(); ++j)
    if (pred(j)) {
      if (seen) return fail(c, "line " + std::to_string(j));
      seen = true;
    }
}

}  // namespace

ConditionReport verify_projective(const Plane& plane, const VertexSet& s) {
  require_kind(plane, PlaneKind::projective);
  const Incidence& inc = plane.inc;
  const Tallies t(inc, s);
  ConditionReport r;
  r.kind = PlaneKind::projective;
  auto& [p1, p2, p1d, p2d] = r.conditions;
  p1.name = "P1";
  p2.name = "P2";
  p1d.name = "P1'";
  p2d.name = "P2'";

  at_most_one_line(inc, p1, [&](Index j) { return !t.inner_line.test(j) && t.meet[j] == 0; });
  for (Index p : s.points) {
    std::size_t tangents = 0;
    for (Index j : inc.lines_through(p)) tangents += !t.inner_line.test(j) && t.meet[j] == 1;
    if (tangents > 1) {
      fail(p2, "point " + std::to_string(p));
      break;
    }
  }
  at_most_one_point(inc, p1d, [&](Index p) { return !t.inner_point.test(p) && t.cover[p] == 0; });
  for (Index l : s.lines) {
    std::size_t once = 0;
    for (Index p : inc.points_on(l)) once += !t.inner_point.test(p) && t.cover[p] == 1;
    if (once > 1) {
      fail(p2d, "line " + std::to_string(l));
      break;
    }
  }
  return r;
}

ConditionReport verify_affine(const Plane& plane, const VertexSet& s) {
  require_kind(plane, PlaneKind::affine);
  const Incidence& inc = plane.inc;
  const auto& ctx = plane.ctx;
  const Tallies t(inc, s);
  const Slots dir(ctx.directions());
  std::vector<bool> covered(dir.size(), false);
  for (Index l : s.lines) covered[dir(ctx.direction_of_line[l])] = true;

  ConditionReport r;
  r.kind = PlaneKind::affine;
  auto& [a1, a2, a1d, a2d] = r.conditions;
  a1.name = "A1";
  a2.name = "A2";
  a1d.name = "A1'";
  a2d.name = "A2'";

  at_most_one_point(inc, a1, [&](Index p) { return !t.inner_point.test(p) && t.cover[p] == 0; });
  for (Index l : s.lines) {
    std::size_t once = 0;
    for (Index p : inc.points_on(l)) once += !t.inner_point.test(p) && t.cover[p] == 1;
    if (once > 1) {
      fail(a2, "line " + std::to_string(l));
      break;
    }
  }
  {
    std::vector<std::size_t> skew_per_dir(dir.size(), 0);
    std::size_t skew_uncovered = 0;
    for (Index j = 0; j < inc.num_lines(); ++j) {
      if (t.inner_line.test(j) || t.meet[j] != 0) continue;
      const std::size_t d = dir(ctx.direction_of_line[j]);
      if (covered[d]) {
        if (++skew_per_dir[d] > 1) fail(a1d, "line " + std::to_string(j));
      } else if (++skew_uncovered > 1) {
        fail(a1d, "line " + std::to_string(j));
      }
    }
  }
  for (Index p : s.points) {
    std::size_t tangents = 0;
    for (Index j : inc.lines_through(p)) tangents += t.meet[j] == 1 && !covered[dir(ctx.direction_of_line[j])];
    if (tangents > 1) {
      fail(a2d, "point " + std::to_string(p));
      break;
    }
  }
  return r;
}

ConditionReport verify_biaffine(const Plane& plane, const VertexSet& s) {
  require_kind(plane, PlaneKind::biaffine);
  const Incidence& inc = plane.inc;
  const auto& ctx = plane.ctx;
  const Tallies t(inc, s);
  const Slots dir(ctx.directions());
  const Slots cls(ctx.classes());
  std::vector<bool> covered(dir.size(), false);
  for (Index l : s.lines) covered[dir(ctx.direction_of_line[l])] = true;
  std::vector<bool> blocked(cls.size(), false);
  for (Index p : s.points) blocked[cls(ctx.class_of_point[p])] = true;

  ConditionReport r;
  r.kind = PlaneKind::biaffine;
  auto& [b1, b2, b1d, b2d] = r.conditions;
  b1.name = "B1";
  b2.name = "B2";
  b1d.name = "B1'";
  b2d.name = "B2'";

  {
    std::vector<std::size_t> uncovered_per_class(cls.size(), 0);
    std::size_t uncovered_unblocked = 0;
    for (Index p = 0; p < inc.num_points(); ++p) {
      if (t.inner_point.test(p) || t.cover[p] != 0) continue;
      const std::size_t c = cls(ctx.class_of_point[p]);
      if (blocked[c]) {
        if (++uncovered_per_class[c] > 1) fail(b1, "point " + std::to_string(p));
      } else if (++uncovered_unblocked > 1) {
        fail(b1, "point " + std::to_string(p));
      }
    }
  }
  for (Index l : s.lines) {
    std::size_t once = 0;
    for (Index p : inc.points_on(l)) once += t.cover[p] == 1 && !blocked[cls(ctx.class_of_point[p])];
    if (once > 1) {
      fail(b2, "line " + std::to_string(l));
      break;
    }
  }
  {
    std::vector<std::size_t> skew_per_dir(dir.size(), 0);
    std::size_t skew_uncovered = 0;
    for (Index j = 0; j < inc.num_lines(); ++j) {
      if (t.inner_line.test(j) || t.meet[j] != 0) continue;
      const std::size_t d = dir(ctx.direction_of_line[j]);
      if (covered[d]) {
        if (++skew_per_dir[d] > 1) fail(b1d, "line " + std::to_string(j));
      } else if (++skew_uncovered > 1) {
        fail(b1d, "line " + std::to_string(j));
      }
    }
  }
  for (Index p : s.points) {
    std::size_t tangents = 0;
    for (Index j : inc.lines_through(p)) tangents += t.meet[j] == 1 && !covered[dir(ctx.direction_of_line[j])];
    if (tangents > 1) {
      fail(b2d, "point " + std::to_string(p));
      break;
    }
  }
  return r;
}

ConditionReport verify_conditions(const Plane& plane, const VertexSet& s) {
  switch (plane.ctx.kind) {
    case PlaneKind::projective: return verify_projective(plane, s);
    case PlaneKind::affine: return verify_affine(plane, s);
    case PlaneKind::biaffine: return verify_biaffine(plane, s);
  }
  throw geometry_error("unknown plane kind");
}

}  // namespace mdim
