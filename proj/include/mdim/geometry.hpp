#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mdim/gf.hpp"
#include "mdim/incidence.hpp"

namespace mdim {

inline constexpr Index kNoIndex = static_cast<Index>(-1);

// PG(2,q) in homogeneous coordinates. Points and lines are normalized so the
// last nonzero coordinate is 1 and are indexed in lexicographic order of
// their coordinate triples. Point x lies on line a iff a.x = 0.
struct CoordinatePlane {
  std::shared_ptr<const FiniteField> field;
  Incidence inc;
  std::vector<std::array<FiniteField::Element, 3>> point_coords;
  std::vector<std::array<FiniteField::Element, 3>> line_coords;

  std::uint32_t order() const { return field->order(); }
  // Index of the point/line with these (not necessarily normalized, nonzero) coordinates.
  Index point_index(std::array<FiniteField::Element, 3> v) const;
  Index line_index(std::array<FiniteField::Element, 3> v) const;

  std::vector<Index> coord_lookup;  // base-q encoding of a normalized triple -> index
};

enum class PlaneKind { projective, affine, biaffine };

const char* to_string(PlaneKind kind);

// Annotations that the plane characterizations and diagnostics rely on.
//
// Direction ids are ambient point indices on the line at infinity and class
// ids are ambient indices of the removed (vertical) lines. A context read
// back from a file has no ambient model; only the ids are then available.
struct PlaneContext {
  PlaneKind kind = PlaneKind::projective;
  std::uint32_t order = 0;
  std::shared_ptr<const CoordinatePlane> ambient;
  std::vector<Index> point_map;  // this structure's points -> ambient points
  std::vector<Index> line_map;   // this structure's lines -> ambient lines
  Index line_at_infinity = kNoIndex;
  std::vector<Index> direction_of_line;  // affine/biaffine
  Index removed_direction = kNoIndex;    // biaffine
  std::vector<Index> class_of_point;     // biaffine

  // Sorted distinct direction ids (q+1 for affine, q for biaffine).
  std::vector<Index> directions() const;
  // Sorted distinct class ids (biaffine).
  std::vector<Index> classes() const;
};

struct Plane {
  Incidence inc;
  PlaneContext ctx;
};

// Throws std::invalid_argument when q is not a prime power within the field limit.
Plane projective_plane(std::uint32_t q);
// The ambient plane of a context, with identity point and line maps.
Plane projective_plane(std::shared_ptr<const CoordinatePlane> model);
Plane affine_from_projective(const Plane& pg, Index ell_inf);
// Requires af.ctx.kind == affine; `direction` is a direction id of af.
Plane biaffine_from_affine(const Plane& af, Index direction);

// AG(2,q) with the line at infinity z = 0.
Plane affine_plane(std::uint32_t q);
// BG(2,q): AG(2,q) without the vertical class, direction (0,1,0).
Plane biaffine_plane(std::uint32_t q);

// GQ(s,1): point (i,j), 1 <= i,j <= s+1, has index (i-1)(s+1)+(j-1); lines are
// h_1..h_{s+1} (h_a = {(i,a)}) followed by v_1..v_{s+1} (v_a = {(a,i)}).
Incidence grid_gq(std::uint32_t s);
Index grid_point(std::uint32_t s, std::uint32_t i, std::uint32_t j);
Index grid_h(std::uint32_t s, std::uint32_t a);
Index grid_v(std::uint32_t s, std::uint32_t a);

// PG(3,q) with normalized coordinates; lines indexed by their sorted point sets.
struct ProjectiveSpace3 {
  std::shared_ptr<const FiniteField> field;
  Incidence inc;
  std::vector<std::array<FiniteField::Element, 4>> point_coords;
  std::vector<Index> coord_lookup;

  Index point_index(std::array<FiniteField::Element, 4> v) const;
};

ProjectiveSpace3 pg3(std::uint32_t q);

// W(q): all points of PG(3,q) with the lines totally isotropic for the form
// x0y1 - x1y0 + x2y3 - x3y2.
struct SymplecticSpace {
  ProjectiveSpace3 space;
  Incidence wq;
  std::vector<Index> pg3_line_of;  // wq line -> pg3 line

  FiniteField::Element form(Index a, Index b) const;
  // Points X with form(P, X) = 0, sorted.
  std::vector<Index> polar_plane(Index point) const;
};

SymplecticSpace w_q(std::uint32_t q);

struct GqCheck {
  bool ok = false;
  std::uint32_t s = 0;
  std::uint32_t t = 0;
  std::string failure;  // first violated axiom with witness
};

GqCheck check_gq(const Incidence& inc);

// Number of points collinear with each of three pairwise non-collinear points.
// Throws geometry_error if two of them are collinear.
std::size_t triad_centers(const Incidence& gq, Index x, Index y, Index z);

// Index of the projective image of a set of PG(2,q) points under the polarity
// (x0,x1,x2) -> [x0,x2,x1]; it maps the line z = 0 to the point (0,1,0).
std::vector<Index> polarity_image_of_points(const CoordinatePlane& pg, const std::vector<Index>& points);

struct IncidenceIsomorphism {
  std::vector<Index> point_map;  // points of the source -> points of the target
  std::vector<Index> line_map;
};

struct IsomorphismSearch {
  std::optional<IncidenceIsomorphism> map;
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
};

// Point-to-point, line-to-line isomorphism by colour refinement with
// individualization and backtracking.
IsomorphismSearch find_isomorphism(const Incidence& source, const Incidence& target,
                                   std::uint64_t node_budget = 100000);

}  // namespace mdim
