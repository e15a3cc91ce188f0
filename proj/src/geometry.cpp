#include "mdim/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "mdim/kernels.hpp"

namespace mdim {

namespace {

using Element = FiniteField::Element;

template <std::size_t N>
std::array<Element, N> normalize(const FiniteField& f, std::array<Element, N> v) {
  std::size_t last = N;
  for (std::size_t i = N; i-- > 0;)
    if (v[i] != 0) {
      last = i;
      break;
    }
  if (last == N) throw geometry_error("zero vector has no projective point");
  const Element s = f.inv(v[last]);
  for (auto& x : v) x = f.mul(x, s);
  return v;
}

template <std::size_t N>
std::size_t encode(std::array<Element, N> v, std::uint32_t q) {
  std::size_t code = 0;
  for (auto x : v) code = code * q + x;
  return code;
}

// Normalized vectors of length N in lexicographic order.
template <std::size_t N>
std::vector<std::array<Element, N>> projective_points(std::uint32_t q) {
  std::vector<std::array<Element, N>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < N; ++i) total *= q;
  for (std::size_t code = 1; code < total; ++code) {
    std::array<Element, N> v{};
    std::size_t c = code;
    for (std::size_t i = N; i-- > 0;) {
      v[i] = static_cast<Element>(c % q);
      c /= q;
    }
    std::size_t last = N;
    for (std::size_t i = N; i-- > 0;)
      if (v[i] != 0) {
        last = i;
        break;
      }
    if (v[last] == 1) out.push_back(v);
  }
  return out;
}

std::shared_ptr<const FiniteField> make_field(std::uint32_t q) {
  return std::make_shared<const FiniteField>(FiniteField::of_order(q));
}

}  // namespace

const char* to_string(PlaneKind kind) {
  switch (kind) {
    case PlaneKind::projective: return "projective";
    case PlaneKind::affine: return "affine";
    case PlaneKind::biaffine: return "biaffine";
  }
  return "?";
}

Index CoordinatePlane::point_index(std::array<Element, 3> v) const {
  return coord_lookup[encode(normalize(*field, v), field->order())];
}

Index CoordinatePlane::line_index(std::array<Element, 3> v) const { return point_index(v); }

std::vector<Index> PlaneContext::directions() const {
  std::vector<Index> d = direction_of_line;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

std::vector<Index> PlaneContext::classes() const {
  std::vector<Index> c = class_of_point;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

Plane projective_plane(std::uint32_t q) {
  auto model = std::make_shared<CoordinatePlane>();
  model->field = make_field(q);
  const FiniteField& f = *model->field;
  model->point_coords = projective_points<3>(q);
  model->line_coords = model->point_coords;
  model->coord_lookup.assign(static_cast<std::size_t>(q) * q * q, kNoIndex);
  for (Index i = 0; i < model->point_coords.size(); ++i) model->coord_lookup[encode(model->point_coords[i], q)] = i;

  std::vector<std::vector<Index>> lines(model->line_coords.size());
  for (Index j = 0; j < model->line_coords.size(); ++j) {
    const auto& a = model->line_coords[j];
    for (Index i = 0; i < model->point_coords.size(); ++i) {
      const auto& x = model->point_coords[i];
      const Element dot = f.add(f.add(f.mul(a[0], x[0]), f.mul(a[1], x[1])), f.mul(a[2], x[2]));
      if (dot == 0) lines[j].push_back(i);
    }
  }
  model->inc = Incidence(model->point_coords.size(), std::move(lines));
  return projective_plane(std::shared_ptr<const CoordinatePlane>(std::move(model)));
}

Plane projective_plane(std::shared_ptr<const CoordinatePlane> model) {
  Plane pg;
  pg.inc = model->inc;
  pg.ctx.kind = PlaneKind::projective;
  pg.ctx.order = model->order();
  pg.ctx.point_map.resize(pg.inc.num_points());
  pg.ctx.line_map.resize(pg.inc.num_lines());
  for (Index i = 0; i < pg.ctx.point_map.size(); ++i) pg.ctx.point_map[i] = i;
  for (Index j = 0; j < pg.ctx.line_map.size(); ++j) pg.ctx.line_map[j] = j;
  pg.ctx.ambient = std::move(model);
  return pg;
}

Plane affine_from_projective(const Plane& pg, Index ell_inf) {
  if (pg.ctx.kind != PlaneKind::projective) throw geometry_error("affine_from_projective needs a projective plane");
  if (ell_inf >= pg.inc.num_lines()) throw geometry_error("line at infinity out of range");
  const Incidence& amb = pg.inc;

  Plane af;
  af.ctx.kind = PlaneKind::affine;
  af.ctx.order = pg.ctx.order;
  af.ctx.ambient = pg.ctx.ambient;
  af.ctx.line_at_infinity = pg.ctx.line_map[ell_inf];

  std::vector<Index> local_of(amb.num_points(), kNoIndex);
  for (Index p = 0; p < amb.num_points(); ++p) {
    if (amb.incident(p, ell_inf)) continue;
    local_of[p] = static_cast<Index>(af.ctx.point_map.size());
    af.ctx.point_map.push_back(pg.ctx.point_map[p]);
  }
  std::vector<std::vector<Index>> lines;
  for (Index j = 0; j < amb.num_lines(); ++j) {
    if (j == ell_inf) continue;
    std::vector<Index> pts;
    Index direction = kNoIndex;
    for (Index p : amb.points_on(j)) {
      if (local_of[p] == kNoIndex)
        direction = pg.ctx.point_map[p];
      else
        pts.push_back(local_of[p]);
    }
    lines.push_back(std::move(pts));
    af.ctx.line_map.push_back(pg.ctx.line_map[j]);
    af.ctx.direction_of_line.push_back(direction);
  }
  af.inc = Incidence(af.ctx.point_map.size(), std::move(lines));
  return af;
}

Plane biaffine_from_affine(const Plane& af, Index direction) {
  if (af.ctx.kind != PlaneKind::affine) throw geometry_error("biaffine_from_affine needs an affine plane");
  const auto dirs = af.ctx.directions();
  if (!std::binary_search(dirs.begin(), dirs.end(), direction)) throw geometry_error("unknown direction");

  Plane bg;
  bg.ctx = af.ctx;
  bg.ctx.kind = PlaneKind::biaffine;
  bg.ctx.removed_direction = direction;
  bg.ctx.line_map.clear();
  bg.ctx.direction_of_line.clear();
  bg.ctx.class_of_point.assign(af.inc.num_points(), kNoIndex);

  std::vector<std::vector<Index>> lines;
  for (Index j = 0; j < af.inc.num_lines(); ++j) {
    if (af.ctx.direction_of_line[j] == direction) {
      for (Index p : af.inc.points_on(j)) bg.ctx.class_of_point[p] = af.ctx.line_map[j];
      continue;
    }
    lines.emplace_back(af.inc.points_on(j).begin(), af.inc.points_on(j).end());
    bg.ctx.line_map.push_back(af.ctx.line_map[j]);
    bg.ctx.direction_of_line.push_back(af.ctx.direction_of_line[j]);
  }
  bg.inc = Incidence(af.inc.num_points(), std::move(lines));
  return bg;
}

Plane affine_plane(std::uint32_t q) {
  Plane pg = projective_plane(q);
  const Index ell_inf = pg.ctx.ambient->line_index({0, 0, 1});
  return affine_from_projective(pg, ell_inf);
}

Plane biaffine_plane(std::uint32_t q) {
  Plane af = affine_plane(q);
  const Index vertical = af.ctx.ambient->point_index({0, 1, 0});
  return biaffine_from_affine(af, vertical);
}

Index grid_point(std::uint32_t s, std::uint32_t i, std::uint32_t j) { return (i - 1) * (s + 1) + (j - 1); }
Index grid_h(std::uint32_t, std::uint32_t a) { return a - 1; }
Index grid_v(std::uint32_t s, std::uint32_t a) { return (s + 1) + a - 1; }

Incidence grid_gq(std::uint32_t s) {
  if (s < 1) throw std::invalid_argument("grid order s must be at least 1");
  std::vector<std::vector<Index>> lines(2 * (s + 1));
  for (std::uint32_t a = 1; a <= s + 1; ++a)
    for (std::uint32_t i = 1; i <= s + 1; ++i) {
      lines[grid_h(s, a)].push_back(grid_point(s, i, a));
      lines[grid_v(s, a)].push_back(grid_point(s, a, i));
    }
  return Incidence(static_cast<std::size_t>(s + 1) * (s + 1), std::move(lines));
}

Index ProjectiveSpace3::point_index(std::array<Element, 4> v) const {
  return coord_lookup[encode(normalize(*field, v), field->order())];
}

ProjectiveSpace3 pg3(std::uint32_t q) {
  ProjectiveSpace3 sp;
  sp.field = make_field(q);
  const FiniteField& f = *sp.field;
  sp.point_coords = projective_points<4>(q);
  const std::size_t n = sp.point_coords.size();
  sp.coord_lookup.assign(static_cast<std::size_t>(q) * q * q * q, kNoIndex);
  for (Index i = 0; i < n; ++i) sp.coord_lookup[encode(sp.point_coords[i], q)] = i;

  std::vector<Bitset> joined(n, Bitset(n));
  std::vector<std::vector<Index>> lines;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      if (joined[a].test(b)) continue;
      std::vector<Index> pts{a};
      for (Element lambda = 0; lambda < q; ++lambda) {
        std::array<Element, 4> v{};
        for (int k = 0; k < 4; ++k) v[k] = f.add(f.mul(lambda, sp.point_coords[a][k]), sp.point_coords[b][k]);
        pts.push_back(sp.point_index(v));
      }
      std::sort(pts.begin(), pts.end());
      for (Index x : pts)
        for (Index y : pts) joined[x].set(y);
      lines.push_back(std::move(pts));
    }
  std::sort(lines.begin(), lines.end());
  sp.inc = Incidence(n, std::move(lines));
  return sp;
}

FiniteField::Element SymplecticSpace::form(Index a, Index b) const {
  const FiniteField& f = *space.field;
  const auto& x = space.point_coords[a];
  const auto& y = space.point_coords[b];
  Element r = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
  r = f.add(r, f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2])));
  return r;
}

std::vector<Index> SymplecticSpace::polar_plane(Index point) const {
  std::vector<Index> out;
  for (Index x = 0; x < space.inc.num_points(); ++x)
    if (form(point, x) == 0) out.push_back(x);
  return out;
}

SymplecticSpace w_q(std::uint32_t q) {
  SymplecticSpace w;
  w.space = pg3(q);
  std::vector<std::vector<Index>> lines;
  for (Index j = 0; j < w.space.inc.num_lines(); ++j) {
    const auto pts = w.space.inc.points_on(j);
    if (w.form(pts[0], pts[1]) == 0) {
      lines.emplace_back(pts.begin(), pts.end());
      w.pg3_line_of.push_back(j);
    }
  }
  w.wq = Incidence(w.space.inc.num_points(), std::move(lines));
  return w;
}

namespace {

// Points collinear with p (p excluded).
Bitset neighbourhood(const Incidence& inc, Index p) {
  Bitset n(inc.num_points());
  for (Index j : inc.lines_through(p))
    for (Index x : inc.points_on(j))
      if (x != p) n.set(x);
  return n;
}

}  // namespace

GqCheck check_gq(const Incidence& inc) {
  GqCheck r;
  if (inc.num_points() == 0 || inc.num_lines() == 0) {
    r.failure = "empty structure";
    return r;
  }
  const std::size_t line_size = inc.points_on(0).size();
  const std::size_t degree = inc.lines_through(0).size();
  if (line_size < 2 || degree < 2) {
    r.failure = "GQ1/GQ2: orders must be positive";
    return r;
  }
  for (Index p = 0; p < inc.num_points(); ++p)
    if (inc.lines_through(p).size() != degree) {
      r.failure = "GQ1: point " + std::to_string(p) + " lies on " + std::to_string(inc.lines_through(p).size()) +
                  " lines, expected " + std::to_string(degree);
      return r;
    }
  for (Index j = 0; j < inc.num_lines(); ++j)
    if (inc.points_on(j).size() != line_size) {
      r.failure = "GQ2: line " + std::to_string(j) + " has " + std::to_string(inc.points_on(j).size()) +
                  " points, expected " + std::to_string(line_size);
      return r;
    }
  for (Index p = 0; p < inc.num_points(); ++p) {
    const Bitset np = neighbourhood(inc, p);
    for (Index j = 0; j < inc.num_lines(); ++j) {
      if (inc.incident(p, j)) continue;
      const std::size_t k = kernels::and_popcount(np.words(), inc.line_bits(j).words());
      if (k != 1) {
        r.failure = "GQ3: point " + std::to_string(p) + " and line " + std::to_string(j) + " are joined through " +
                    std::to_string(k) + " points";
        return r;
      }
    }
  }
  r.ok = true;
  r.s = static_cast<std::uint32_t>(line_size - 1);
  r.t = static_cast<std::uint32_t>(degree - 1);
  return r;
}

std::size_t triad_centers(const Incidence& gq, Index x, Index y, Index z) {
  if (x == y || y == z || x == z || gq.collinear(x, y) || gq.collinear(y, z) || gq.collinear(x, z))
    throw geometry_error("triad points must be pairwise non-collinear");
  const Bitset nx = neighbourhood(gq, x), ny = neighbourhood(gq, y), nz = neighbourhood(gq, z);
  std::size_t count = 0;
  for (std::size_t w = 0; w < nx.words().size(); ++w)
    count += std::popcount(nx.words()[w] & ny.words()[w] & nz.words()[w]);
  return count;
}

std::vector<Index> polarity_image_of_points(const CoordinatePlane& pg, const std::vector<Index>& points) {
  std::vector<Index> out;
  out.reserve(points.size());
  for (Index p : points) {
    const auto& v = pg.point_coords[p];
    out.push_back(pg.line_index({v[0], v[2], v[1]}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mdim
