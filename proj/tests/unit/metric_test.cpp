#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "mdim/metric.hpp"

using namespace mdim;

namespace {

VertexSet random_set(const Incidence& inc, std::size_t size, std::mt19937& rng) {
  std::vector<Index> all(inc.num_vertices());
  for (Index v = 0; v < all.size(); ++v) all[v] = v;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  return VertexSet::from_vertices(all, inc.num_points());
}

// Lexicographically first pair with equal signatures, from the oracle distances.
std::optional<std::pair<Index, Index>> first_collision(const std::vector<std::vector<int>>& d, const std::vector<int>& set) {
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = a + 1; b < d.size(); ++b) {
      bool same = true;
      for (int s : set) same = same && d[a][s] == d[b][s];
      if (same) return std::make_pair(static_cast<Index>(a), static_cast<Index>(b));
    }
  return std::nullopt;
}

}  // namespace

TEST_CASE("distances agree with the oracle") {
  for (const Incidence& inc : {projective_plane(3).inc, biaffine_plane(4).inc, grid_gq(3), w_q(2).wq}) {
    const auto ref = oracle::all_distances(inc);
    const Distances d(inc);
    for (Index u = 0; u < inc.num_vertices(); ++u) {
      const auto row = bfs_distances(inc, u);
      for (Index v = 0; v < inc.num_vertices(); ++v) {
        CHECK(row[v] == ref[u][v]);
        CHECK(d(u, v) == ref[u][v]);
        const bool same_side = (u < inc.num_points()) == (v < inc.num_points());
        CHECK((d(u, v) % 2 == 0) == same_side);
      }
    }
  }
}

TEST_CASE("uncached distance rows") {
  const Plane pg = projective_plane(47);
  const Distances d(pg.inc);
  CHECK_FALSE(d.cached());
  CHECK(d.diameter() >= 3);
  CHECK(Distances(projective_plane(5).inc).diameter() == 3);
  for (Index v : {0u, 100u, 2300u}) {
    const auto expect = bfs_distances(pg.inc, v);
    const auto row = d.row(v);
    CHECK(std::equal(row.begin(), row.end(), expect.begin()));
  }
}

TEST_CASE("affine line distances") {
  const Plane af = affine_plane(4);
  const Distances d(af.inc);
  const std::size_t np = af.inc.num_points();
  for (Index a = 0; a < af.inc.num_lines(); ++a)
    for (Index b = a + 1; b < af.inc.num_lines(); ++b) {
      const bool parallel = af.ctx.direction_of_line[a] == af.ctx.direction_of_line[b];
      CHECK(d(np + a, np + b) == (parallel ? 4 : 2));
    }
}

TEST_CASE("disconnected structures are rejected") {
  const Incidence two(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(bfs_distances(two, 0), geometry_error);
}

TEST_CASE("generic verification against the oracle") {
  std::mt19937 rng(5);
  for (const Incidence& inc : {biaffine_plane(3).inc, affine_plane(3).inc, projective_plane(3).inc, grid_gq(3), w_q(2).wq}) {
    const auto ref = oracle::all_distances(inc);
    for (int trial = 0; trial < 200; ++trial) {
      const VertexSet s = random_set(inc, 2 + trial % 8, rng);
      const auto verts = oracle::vertices_of(s, inc.num_points());
      const ResolveVerdict v = is_resolving(inc, s);
      CHECK(v.resolving == oracle::resolves(ref, verts));
      CHECK(v.witness == first_collision(ref, verts));
      std::vector<int> points(inc.num_points()), lines(inc.num_lines());
      for (int i = 0; i < static_cast<int>(points.size()); ++i) points[i] = i;
      for (int i = 0; i < static_cast<int>(lines.size()); ++i) lines[i] = static_cast<int>(inc.num_points()) + i;
      CHECK(is_semi_resolving(inc, s, Side::points).resolving == oracle::resolves(ref, verts, points));
      CHECK(is_semi_resolving(inc, s, Side::lines).resolving == oracle::resolves(ref, verts, lines));
    }
  }
}

TEST_CASE("trivial sets") {
  const Incidence inc = biaffine_plane(3).inc;
  std::vector<Index> all(inc.num_vertices());
  for (Index v = 0; v < all.size(); ++v) all[v] = v;
  const VertexSet full = VertexSet::from_vertices(all, inc.num_points());
  CHECK(is_resolving(inc, full).resolving);
  CHECK_FALSE(is_resolving(inc, {}).resolving);
  CHECK(is_resolving(inc, {}).witness == std::make_pair(Index{0}, Index{1}));
  VertexSet points;
  for (Index p = 0; p < inc.num_points(); ++p) points.points.push_back(p);
  CHECK(is_semi_resolving(inc, points, Side::points).resolving);
  CHECK_FALSE(is_semi_resolving(inc, {}, Side::points).resolving);
}

TEST_CASE("lines meeting the point part twice are resolved") {
  std::mt19937 rng(9);
  for (const Incidence& inc : {projective_plane(4).inc, biaffine_plane(5).inc, w_q(3).wq}) {
    const Distances d(inc);
    const std::size_t np = inc.num_points();
    for (int trial = 0; trial < 30; ++trial) {
      const VertexSet s = random_set(inc, 4 + trial % 6, rng);
      std::vector<std::vector<std::uint8_t>> line_sigs, point_sigs;
      for (Index l = 0; l < inc.num_lines(); ++l) line_sigs.push_back(signature(d, np, s, np + l));
      for (Index p = 0; p < np; ++p) point_sigs.push_back(signature(d, np, s, p));
      for (Index l = 0; l < inc.num_lines(); ++l) {
        std::size_t inner = 0;
        for (Index p : inc.points_on(l)) inner += s.contains_point(p);
        if (inner < 2) continue;
        for (Index m = 0; m < inc.num_lines(); ++m)
          if (m != l) CHECK(line_sigs[m] != line_sigs[l]);
      }
      for (Index p = 0; p < np; ++p) {
        std::size_t inner = 0;
        for (Index l : inc.lines_through(p)) inner += s.contains_line(l);
        if (inner < 2) continue;
        for (Index x = 0; x < np; ++x)
          if (x != p) CHECK(point_sigs[x] != point_sigs[p]);
      }
    }
  }
}

TEST_CASE("a resolving 4-set of BG(2,3) from exhaustive enumeration") {
  const Incidence inc = biaffine_plane(3).inc;
  const auto ref = oracle::all_distances(inc);
  const auto found = oracle::first_resolving(ref, 4);
  REQUIRE(found);
  CHECK_FALSE(oracle::first_resolving(ref, 3));
  CHECK(is_resolving(inc, VertexSet::from_vertices(std::vector<Index>(found->begin(), found->end()), 9)).resolving);
}

TEST_CASE("diagnostics") {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const Plane bg = biaffine_plane(q);
    const Diagnostics e = diagnostics(bg, {});
    CHECK(e.uncovered_directions == q);
    CHECK(e.unblocked_classes == q);
    CHECK(e.skew_lines == q * q);
    VertexSet one_class;
    const Index d0 = bg.ctx.direction_of_line[0];
    for (Index l = 0; l < bg.inc.num_lines(); ++l)
      if (bg.ctx.direction_of_line[l] == d0) one_class.lines.push_back(l);
    CHECK(diagnostics(bg, one_class).uncovered_directions == q - 1);
  }
  const Plane af = affine_plane(3);
  CHECK(diagnostics(af, {}).uncovered_directions == 4);
  CHECK_THROWS_AS(diagnostics(projective_plane(3), {}), geometry_error);
}

TEST_CASE("vertex set validation") {
  const Incidence inc = biaffine_plane(3).inc;
  VertexSet s{{0, 20}, {}};
  CHECK_THROWS_AS(s.validate(inc), geometry_error);
  VertexSet t{{3, 1, 3}, {2}};
  t.normalize();
  CHECK(t.points == std::vector<Index>{1, 3});
  CHECK(t.vertices(9) == std::vector<Index>{1, 3, 11});
}
