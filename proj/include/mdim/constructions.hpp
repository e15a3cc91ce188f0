#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdim/geometry.hpp"
#include "mdim/metric.hpp"

namespace mdim {

// A construction could not produce a verified set.
struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Affine metric basis of size 3q-4. Parallel class [P_inf] is the first
// direction, e and l0 its first two lines, R and R' the first two points of e
// and l1 the first line through R other than e. The core
//   ([e] \ {R,R'}) u ([P_inf] \ {e,l0}) u ([R] \ {e,l1})
// is completed by variant 1: l1, 2: the line through R' parallel to l1,
// 3: R', 4: the point l0 n l1. Other admissible choices are tried when the
// result fails verify_affine.
VertexSet affine_basis(const Plane& af, int variant);

// Points of the projective closure: P_S u ([l_inf] \ {P}) with L_S, where P is
// the first direction carrying two lines of L_S. Indices refer to the ambient
// plane, i.e. projective_plane(af.ctx.ambient).
VertexSet lift_affine(const Plane& af, const VertexSet& s);

// Resolving set of size 3q-6 in a biaffine plane of order q >= 4 with
// |T| = t_size points in C(P1), 1 <= t_size <= q-3.
VertexSet biaffine_3q6(const Plane& bg, std::uint32_t t_size);

// (B \ {Q}) u (C \ {r}) for a blocking set B of the affine plane above bg and
// a set C of bg-lines covering every ambient point except the removed
// direction; Q and r are the first elements of B and C.
VertexSet bc_resolving(const Plane& bg, const std::vector<Index>& blocking, const std::vector<Index>& covering);
// Lines of bg that are polar images of the given bg points under the polarity
// of the ambient plane. A blocking set of the affine plane maps to a set
// covering every ambient point except the removed direction.
std::vector<Index> polar_lines(const Plane& bg, const std::vector<Index>& points);

// The resolving set S' of size phi(s) for grid_gq(s), s >= 2.
VertexSet grid_resolving(std::uint32_t s);
// 4r+1, 4r+2, 4r+3 for s = 3r, 3r+1, 3r+2.
std::uint32_t grid_phi(std::uint32_t s);

// Semi-resolving set for the points of W(q): [a1] u [a2] u [a3] u [a4] minus
// the first point of each line, where a1, a2, a3 are pairwise skew and a4
// misses their hyperbolic quadric.
struct PointSrs {
  VertexSet set;                // points only, size 4q
  std::vector<Index> lines;     // a1, a2, a3, a4 as W(q) lines
};
PointSrs wq_point_srs(const SymplecticSpace& w);

// Semi-resolving set for the points of Q(4,q) = dual(W(q)), q odd, with
// anchor point `u` of the dual. Indices refer to dual(w.wq).
struct LineSrs {
  VertexSet set;  // size 5q-4
  Index u = 0;    // U
  Index w = 0;    // W
  Index ell = 0;  // l
};
LineSrs gq_line_srs_odd(const SymplecticSpace& w, Index u = 0);

// Resolving set of W(q): size <= 8q-1 for odd q, <= 8q for even q.
struct WqResolving {
  VertexSet set;
  bool aligned = true;  // odd q: the collinear part of the line srs lies in the point srs
};
WqResolving wq_resolving(const SymplecticSpace& w);

}  // namespace mdim
