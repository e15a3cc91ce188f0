#include "mdim/constructions.hpp"

#include <algorithm>
#include <optional>

#include "mdim/characterizations.hpp"
#include "mdim/kernels.hpp"

namespace mdim {

namespace {

constexpr int kMaxAttempts = 64;

Index line_with_direction(const Plane& p, Index point, Index direction) {
  for (Index l : p.inc.lines_through(point))
    if (p.ctx.direction_of_line[l] == direction) return l;
  return kNoIndex;
}

Index point_in_class(const Plane& p, Index line, Index cls) {
  for (Index x : p.inc.points_on(line))
    if (p.ctx.class_of_point[x] == cls) return x;
  return kNoIndex;
}

std::vector<Index> lines_with_direction(const Plane& p, Index direction) {
  std::vector<Index> out;
  for (Index l = 0; l < p.inc.num_lines(); ++l)
    if (p.ctx.direction_of_line[l] == direction) out.push_back(l);
  return out;
}

std::string describe(const ResolveVerdict& v) {
  if (v.resolving || !v.witness) return "resolving";
  return "unresolved pair " + std::to_string(v.witness->first) + " " + std::to_string(v.witness->second);
}

bool contains(const std::vector<Index>& v, Index x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

VertexSet affine_basis(const Plane& af, int variant) {
  if (af.ctx.kind != PlaneKind::affine) throw geometry_error("affine_basis needs an affine plane");
  if (variant < 1 || variant > 4) throw std::invalid_argument("affine_basis variant must be 1..4");
  if (af.ctx.order < 4) throw std::invalid_argument("affine_basis needs q >= 4");

  const Index p_inf = af.ctx.directions().front();
  const std::vector<Index> vertical = lines_with_direction(af, p_inf);
  int attempts = 0;
  std::string last_failure;
  for (Index e : vertical) {
    for (Index l0 : vertical) {
      if (l0 == e) continue;
      const auto on_e = af.inc.points_on(e);
      for (Index r : on_e) {
        for (Index r2 : on_e) {
          if (r2 == r) continue;
          for (Index l1 : af.inc.lines_through(r)) {
            if (l1 == e) continue;
            if (++attempts > kMaxAttempts)
              throw construction_error("affine_basis: no verified set within " + std::to_string(kMaxAttempts) +
                                       " choices, last failure " + last_failure);
            VertexSet s;
            for (Index x : on_e)
              if (x != r && x != r2) s.points.push_back(x);
            for (Index l : vertical)
              if (l != e && l != l0) s.lines.push_back(l);
            for (Index l : af.inc.lines_through(r))
              if (l != e && l != l1) s.lines.push_back(l);
            switch (variant) {
              case 1: s.lines.push_back(l1); break;
              case 2: s.lines.push_back(line_with_direction(af, r2, af.ctx.direction_of_line[l1])); break;
              case 3: s.points.push_back(r2); break;
              case 4: s.points.push_back(*af.inc.meet(l0, l1)); break;
            }
            s.normalize();
            const ConditionReport rep = verify_affine(af, s);
            if (rep.all()) return s;
            last_failure = rep.first_failure();
          }
        }
      }
    }
  }
  throw construction_error("affine_basis: no admissible choice verifies, last failure " + last_failure);
}

VertexSet lift_affine(const Plane& af, const VertexSet& s) {
  if (af.ctx.kind != PlaneKind::affine) throw geometry_error("lift_affine needs an affine plane");
  if (!af.ctx.ambient) throw geometry_error("lift_affine needs the ambient projective plane");
  s.validate(af.inc);
  std::optional<Index> carrier;
  for (Index d : af.ctx.directions()) {
    std::size_t n = 0;
    for (Index l : s.lines) n += af.ctx.direction_of_line[l] == d;
    if (n >= 2) {
      carrier = d;
      break;
    }
  }
  if (!carrier) throw construction_error("lift_affine: no direction carries two lines of the set");

  const Plane pg = projective_plane(af.ctx.ambient);
  VertexSet out;
  for (Index p : s.points) out.points.push_back(af.ctx.point_map[p]);
  for (Index p : pg.inc.points_on(af.ctx.line_at_infinity))
    if (p != *carrier) out.points.push_back(p);
  for (Index l : s.lines) out.lines.push_back(af.ctx.line_map[l]);
  out.normalize();
  const ConditionReport rep = verify_projective(pg, out);
  if (!rep.all()) throw construction_error("lift_affine: lifted set violates " + rep.first_failure());
  return out;
}

VertexSet biaffine_3q6(const Plane& bg, std::uint32_t t_size) {
  if (bg.ctx.kind != PlaneKind::biaffine) throw geometry_error("biaffine_3q6 needs a biaffine plane");
  const std::uint32_t q = bg.ctx.order;
  if (q < 4) throw std::invalid_argument("biaffine_3q6 needs q >= 4");
  if (t_size < 1 || t_size > q - 3) throw std::invalid_argument("biaffine_3q6 needs 1 <= t_size <= q-3");

  const Index l1 = 0;
  const Index p1 = bg.inc.points_on(l1).front();
  const Index x_dir = bg.ctx.direction_of_line[l1];
  const Index c1 = bg.ctx.class_of_point[p1];
  std::vector<Index> class_p1;
  for (Index p = 0; p < bg.inc.num_points(); ++p)
    if (bg.ctx.class_of_point[p] == c1) class_p1.push_back(p);

  std::string last_failure =
      "ZPq n C(P1) equals XW n C(P1) for every numbering of l1 and [P1], so no admissible T exists";
  for (Index pq : bg.inc.points_on(l1)) {
    if (pq == p1) continue;
    for (Index lq : bg.inc.lines_through(p1)) {
      if (lq == l1) continue;
      const Index z_dir = bg.ctx.direction_of_line[lq];
      const Index w = point_in_class(bg, lq, bg.ctx.class_of_point[pq]);
      const Index xw = line_with_direction(bg, w, x_dir);
      const Index forced = point_in_class(bg, line_with_direction(bg, pq, z_dir), c1);
      const Index banned = point_in_class(bg, xw, c1);
      if (forced == banned) continue;

      std::vector<Index> t{forced};
      for (Index p : class_p1) {
        if (t.size() == t_size) break;
        if (p != p1 && p != banned && p != forced) t.push_back(p);
      }
      Index r = kNoIndex;
      for (Index p : class_p1) {
        if (p != p1 && p != banned && !contains(t, p)) {
          r = p;
          break;
        }
      }
      if (t.size() != t_size || r == kNoIndex) continue;

      VertexSet s;
      s.points = t;
      for (Index p : bg.inc.points_on(l1))
        if (p != p1 && p != pq) s.points.push_back(p);
      for (Index l : bg.inc.lines_through(p1))
        if (l != l1 && l != lq) s.lines.push_back(l);
      for (Index p : class_p1)
        if (p != p1 && p != r && !contains(t, p)) s.lines.push_back(line_with_direction(bg, p, x_dir));
      s.normalize();
      const ConditionReport rep = verify_biaffine(bg, s);
      if (rep.all() && s.size() == 3 * q - 6) return s;
      last_failure = rep.first_failure();
    }
  }
  throw construction_error("biaffine_3q6: " + last_failure);
}

VertexSet bc_resolving(const Plane& bg, const std::vector<Index>& blocking, const std::vector<Index>& covering) {
  if (bg.ctx.kind != PlaneKind::biaffine) throw geometry_error("bc_resolving needs a biaffine plane");
  VertexSet input{blocking, covering};
  input.normalize();
  input.validate(bg.inc);
  if (input.points.empty() || input.lines.empty()) throw construction_error("bc_resolving: empty blocking or covering set");

  for (Index l = 0; l < bg.inc.num_lines(); ++l) {
    const auto pts = bg.inc.points_on(l);
    if (std::none_of(pts.begin(), pts.end(), [&](Index p) { return input.contains_point(p); }))
      throw construction_error("bc_resolving: line " + std::to_string(l) + " is not blocked");
  }
  for (Index c : bg.ctx.classes()) {
    bool hit = false;
    for (Index p : input.points) hit = hit || bg.ctx.class_of_point[p] == c;
    if (!hit) throw construction_error("bc_resolving: class " + std::to_string(c) + " is not blocked");
  }
  for (Index p = 0; p < bg.inc.num_points(); ++p) {
    const auto ls = bg.inc.lines_through(p);
    if (std::none_of(ls.begin(), ls.end(), [&](Index l) { return input.contains_line(l); }))
      throw construction_error("bc_resolving: point " + std::to_string(p) + " is not covered");
  }
  for (Index d : bg.ctx.directions()) {
    bool hit = false;
    for (Index l : input.lines) hit = hit || bg.ctx.direction_of_line[l] == d;
    if (!hit) throw construction_error("bc_resolving: direction " + std::to_string(d) + " is not covered");
  }

  VertexSet s = input;
  s.points.erase(s.points.begin());
  s.lines.erase(s.lines.begin());
  const ResolveVerdict v = is_resolving(bg.inc, s);
  if (!v.resolving) throw construction_error("bc_resolving: " + describe(v));
  return s;
}

std::vector<Index> polar_lines(const Plane& bg, const std::vector<Index>& points) {
  if (bg.ctx.kind != PlaneKind::biaffine || !bg.ctx.ambient) throw geometry_error("polar_lines needs a biaffine plane with ambient");
  std::vector<Index> ambient;
  for (Index p : points) ambient.push_back(bg.ctx.point_map.at(p));
  std::vector<Index> local(bg.ctx.ambient->inc.num_lines(), kNoIndex);
  for (Index l = 0; l < bg.ctx.line_map.size(); ++l) local[bg.ctx.line_map[l]] = l;
  std::vector<Index> out;
  for (Index l : polarity_image_of_points(*bg.ctx.ambient, ambient)) {
    if (local[l] == kNoIndex) throw geometry_error("polar image of a point is not a line of the biaffine plane");
    out.push_back(local[l]);
  }
  return out;
}

std::uint32_t grid_phi(std::uint32_t s) { return 4 * (s / 3) + s % 3 + 1; }

VertexSet grid_resolving(std::uint32_t s) {
  if (s < 2) throw std::invalid_argument("grid_resolving needs s >= 2");
  const std::uint32_t r = s / 3;
  const std::uint32_t t = s % 3;
  VertexSet out;
  auto pt = [&](std::uint32_t i, std::uint32_t j) { out.points.push_back(grid_point(s, i, j)); };
  for (std::uint32_t i = 0; i < r; ++i) {
    pt(1 + 3 * i, 2 + 3 * i);
    pt(2 + 3 * i, 1 + 3 * i);
    pt(1 + 3 * i, 3 + 3 * i);
    pt(3 + 3 * i, 1 + 3 * i);
  }
  if (t == 1) {
    pt(1 + 3 * r, 1 + 3 * r);
    pt(2 + 3 * r, 1 + 3 * r);
  } else if (t == 2) {
    pt(1 + 3 * r, 2 + 3 * r);
    pt(1 + 3 * r, 3 + 3 * r);
  }
  if (t != 1) out.lines.push_back(grid_v(s, s + 1));
  out.normalize();
  const ResolveVerdict v = is_resolving(grid_gq(s), out);
  if (!v.resolving) throw construction_error("grid_resolving: " + describe(v));
  return out;
}

PointSrs wq_point_srs(const SymplecticSpace& w) {
  const Incidence& wq = w.wq;
  const Incidence& space = w.space.inc;
  const Index n = static_cast<Index>(wq.num_lines());
  const Distances dist(wq);
  auto skew = [&](Index a, Index b) { return !wq.meet(a, b).has_value(); };

  for (Index a1 = 0; a1 < n; ++a1) {
    for (Index a2 = a1 + 1; a2 < n; ++a2) {
      if (!skew(a1, a2)) continue;
      for (Index a3 = a2 + 1; a3 < n; ++a3) {
        if (!skew(a1, a3) || !skew(a2, a3)) continue;
        std::vector<char> on_quadric(space.num_points(), 0);
        const Index lines[3] = {w.pg3_line_of[a1], w.pg3_line_of[a2], w.pg3_line_of[a3]};
        for (Index m = 0; m < space.num_lines(); ++m) {
          bool transversal = true;
          for (Index a : lines)
            transversal = transversal && kernels::and_popcount(space.line_bits(m).words(), space.line_bits(a).words()) > 0;
          if (!transversal) continue;
          for (Index p : space.points_on(m)) on_quadric[p] = 1;
        }
        for (Index a4 = 0; a4 < n; ++a4) {
          const auto pts = wq.points_on(a4);
          if (std::any_of(pts.begin(), pts.end(), [&](Index p) { return on_quadric[p] != 0; })) continue;
          PointSrs out;
          out.lines = {a1, a2, a3, a4};
          for (Index a : out.lines) {
            const auto on = wq.points_on(a);
            out.set.points.insert(out.set.points.end(), on.begin() + 1, on.end());
          }
          out.set.normalize();
          if (is_semi_resolving(wq, dist, out.set, Side::points).resolving) return out;
        }
      }
    }
  }
  throw construction_error("wq_point_srs: no skew triple admits a line missing its quadric");
}

namespace {

std::optional<LineSrs> line_srs_at(const Incidence& dual, const Distances& dist, Index u, std::uint32_t q) {
  const auto through_u = dual.lines_through(u);
  const std::vector<Index> ells(through_u.begin(), through_u.end());
  if (ells.size() != q + 1) return std::nullopt;
  for (Index w : dual.points_on(ells[0])) {
    if (w == u) continue;
    for (Index ell : dual.lines_through(w)) {
      if (ell == ells[0]) continue;
      LineSrs out{{}, u, w, ell};
      for (Index l : {ells[0], ells[1], ells[2], ell})
        for (Index p : dual.points_on(l))
          if (p != u && p != w) out.set.points.push_back(p);
      for (std::size_t i = 4; i < ells.size(); ++i) out.set.lines.push_back(ells[i]);
      out.set.normalize();
      if (is_semi_resolving(dual, dist, out.set, Side::points).resolving) return out;
    }
  }
  return std::nullopt;
}

}  // namespace

LineSrs gq_line_srs_odd(const SymplecticSpace& w, Index u) {
  const std::uint32_t q = w.space.field->order();
  if (q % 2 == 0 || q < 3) throw std::invalid_argument("gq_line_srs_odd needs odd q >= 3");
  const Incidence dual = w.wq.dual();
  if (u >= dual.num_points()) throw std::invalid_argument("gq_line_srs_odd: anchor out of range");
  const Distances dist(dual);
  if (auto out = line_srs_at(dual, dist, u, q)) return *out;
  throw construction_error("gq_line_srs_odd: no choice of W and l verifies");
}

WqResolving wq_resolving(const SymplecticSpace& w) {
  const std::uint32_t q = w.space.field->order();
  const Incidence& wq = w.wq;
  const PointSrs ps = wq_point_srs(w);
  WqResolving out;

  if (q % 2 == 1) {
    const Incidence dual = wq.dual();
    const Distances dist(dual);
    std::optional<LineSrs> ls = line_srs_at(dual, dist, ps.lines[0], q);
    if (!ls) {
      out.aligned = false;
      ls = line_srs_at(dual, dist, 0, q);
    }
    if (!ls) throw construction_error("wq_resolving: no line semi-resolving set");
    for (Index p : ls->set.lines) out.aligned = out.aligned && ps.set.contains_point(p);
    out.set.points = ps.set.points;
    out.set.points.insert(out.set.points.end(), ls->set.lines.begin(), ls->set.lines.end());
    out.set.lines = ls->set.points;
  } else {
    const IsomorphismSearch iso = find_isomorphism(wq.dual(), wq, 1000000);
    if (!iso.map) throw construction_error(iso.budget_exhausted ? "wq_resolving: isomorphism search budget exhausted"
                                                                : "wq_resolving: W(q) is not self-dual");
    out.set.points = ps.set.points;
    for (Index l = 0; l < iso.map->point_map.size(); ++l)
      if (ps.set.contains_point(iso.map->point_map[l])) out.set.lines.push_back(l);
  }
  out.set.normalize();
  const ResolveVerdict v = is_resolving(wq, out.set);
  if (!v.resolving) throw construction_error("wq_resolving: " + describe(v));
  return out;
}

}  // namespace mdim
