#include "mdim/metric.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "mdim/kernels.hpp"

namespace mdim {

void VertexSet::normalize() {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
}

std::vector<Index> VertexSet::vertices(std::size_t n_points) const {
  std::vector<Index> v(points);
  for (Index l : lines) v.push_back(static_cast<Index>(n_points + l));
  return v;
}

VertexSet VertexSet::from_vertices(std::span<const Index> vertices, std::size_t n_points) {
  VertexSet s;
  for (Index v : vertices) {
    if (v < n_points)
      s.points.push_back(v);
    else
      s.lines.push_back(static_cast<Index>(v - n_points));
  }
  s.normalize();
  return s;
}

void VertexSet::validate(const Incidence& inc) const {
  for (Index p : points)
    if (p >= inc.num_points()) throw geometry_error("set point " + std::to_string(p) + " out of range");
  for (Index l : lines)
    if (l >= inc.num_lines()) throw geometry_error("set line " + std::to_string(l) + " out of range");
  if (std::adjacent_find(points.begin(), points.end()) != points.end() ||
      std::adjacent_find(lines.begin(), lines.end()) != lines.end())
    throw geometry_error("set contains duplicates");
  if (!std::is_sorted(points.begin(), points.end()) || !std::is_sorted(lines.begin(), lines.end()))
    throw geometry_error("set is not sorted");
}

bool VertexSet::contains_point(Index p) const { return std::binary_search(points.begin(), points.end(), p); }
bool VertexSet::contains_line(Index l) const { return std::binary_search(lines.begin(), lines.end(), l); }

namespace {

void bfs_into(const Incidence& inc, Index source, std::span<std::uint8_t> dist) {
  const Index np = static_cast<Index>(inc.num_points());
  std::fill(dist.begin(), dist.end(), kUnreachable);
  std::vector<Index> frontier{source}, next;
  dist[source] = 0;
  std::uint8_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (Index v : frontier) {
      if (v < np) {
        for (Index j : inc.lines_through(v))
          if (dist[np + j] == kUnreachable) {
            dist[np + j] = level;
            next.push_back(np + j);
          }
      } else {
        for (Index p : inc.points_on(v - np))
          if (dist[p] == kUnreachable) {
            dist[p] = level;
            next.push_back(p);
          }
      }
    }
    std::swap(frontier, next);
  }
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] == kUnreachable)
      throw geometry_error("incidence graph is disconnected (vertex " + std::to_string(i) + " unreachable from " +
                           std::to_string(source) + ")");
}

}  // namespace

std::vector<std::uint8_t> bfs_distances(const Incidence& inc, Index vertex) {
  std::vector<std::uint8_t> d(inc.num_vertices());
  bfs_into(inc, vertex, d);
  return d;
}

Distances::Distances(const Incidence& inc) : inc_(&inc), n_(inc.num_vertices()) {
  if (n_ <= kMatrixLimit) {
    matrix_.resize(n_ * n_);
    for (Index v = 0; v < n_; ++v) {
      std::span<std::uint8_t> row(matrix_.data() + static_cast<std::size_t>(v) * n_, n_);
      bfs_into(inc, v, row);
      diameter_ = std::max(diameter_, *std::max_element(row.begin(), row.end()));
    }
  } else {
    scratch_.resize(n_);
    if (n_ > 0) {
      bfs_into(inc, 0, scratch_);
      // Eccentricity bound only; exact diameter is not needed uncached.
      diameter_ = static_cast<std::uint8_t>(std::min<int>(254, 2 * *std::max_element(scratch_.begin(), scratch_.end())));
    }
  }
}

std::span<const std::uint8_t> Distances::row(Index v) const {
  if (!matrix_.empty()) return {matrix_.data() + static_cast<std::size_t>(v) * n_, n_};
  bfs_into(*inc_, v, scratch_);
  return scratch_;
}

std::vector<std::uint8_t> signature(const Distances& d, std::size_t n_points, const VertexSet& s, Index v) {
  std::vector<std::uint8_t> sig;
  sig.reserve(s.size());
  for (Index x : s.vertices(n_points)) sig.push_back(d(x, v));
  return sig;
}

namespace {

ResolveVerdict check_distinct(const Incidence& inc, const Distances& d, const VertexSet& s, Index begin, Index end) {
  s.validate(inc);
  const auto landmarks = s.vertices(inc.num_points());
  const std::size_t k = landmarks.size();
  const std::size_t count = end - begin;
  std::vector<std::uint8_t> sig(count * k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto row = d.row(landmarks[c]);
    for (std::size_t i = 0; i < count; ++i) sig[i * k + c] = row[begin + i];
  }
  std::vector<Index> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](Index a, Index b) {
    return std::lexicographical_compare(sig.begin() + a * k, sig.begin() + (a + 1) * k, sig.begin() + b * k,
                                        sig.begin() + (b + 1) * k);
  };
  auto equal = [&](Index a, Index b) {
    return std::equal(sig.begin() + a * k, sig.begin() + (a + 1) * k, sig.begin() + b * k);
  };
  std::stable_sort(order.begin(), order.end(), less);
  ResolveVerdict verdict{true, std::nullopt};
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (!equal(order[i], order[i + 1])) continue;
    // Within a group indices ascend, so the group start and its successor
    // form the group's smallest pair.
    if (i > 0 && equal(order[i - 1], order[i])) continue;
    std::pair<Index, Index> w{begin + order[i], begin + order[i + 1]};
    if (!verdict.witness || w < *verdict.witness) verdict.witness = w;
    verdict.resolving = false;
  }
  return verdict;
}

}  // namespace

ResolveVerdict is_resolving(const Incidence& inc, const Distances& d, const VertexSet& s) {
  return check_distinct(inc, d, s, 0, static_cast<Index>(inc.num_vertices()));
}

ResolveVerdict is_resolving(const Incidence& inc, const VertexSet& s) {
  const Distances d(inc);
  return is_resolving(inc, d, s);
}

ResolveVerdict is_semi_resolving(const Incidence& inc, const Distances& d, const VertexSet& s, Side side) {
  const Index np = static_cast<Index>(inc.num_points());
  if (side == Side::points) return check_distinct(inc, d, s, 0, np);
  return check_distinct(inc, d, s, np, static_cast<Index>(inc.num_vertices()));
}

ResolveVerdict is_semi_resolving(const Incidence& inc, const VertexSet& s, Side side) {
  const Distances d(inc);
  return is_semi_resolving(inc, d, s, side);
}

namespace {

Bitset point_bits_of(const Incidence& inc, const VertexSet& s) {
  Bitset b(inc.num_points());
  for (Index p : s.points) b.set(p);
  return b;
}

Bitset line_bits_of(const Incidence& inc, const VertexSet& s) {
  Bitset b(inc.num_lines());
  for (Index l : s.lines) b.set(l);
  return b;
}

}  // namespace

Diagnostics diagnostics(const Plane& plane, const VertexSet& s) {
  const auto& ctx = plane.ctx;
  const auto& inc = plane.inc;
  if (ctx.kind == PlaneKind::projective) throw geometry_error("diagnostics need an affine or biaffine context");
  s.validate(inc);

  Diagnostics d;
  const auto dirs = ctx.directions();
  d.directions = dirs.size();
  std::vector<bool> covered(dirs.size(), false);
  auto dir_slot = [&](Index line) {
    return static_cast<std::size_t>(std::lower_bound(dirs.begin(), dirs.end(), ctx.direction_of_line[line]) - dirs.begin());
  };
  for (Index l : s.lines) covered[dir_slot(l)] = true;
  d.uncovered_directions = std::count(covered.begin(), covered.end(), false);

  if (ctx.kind == PlaneKind::biaffine) {
    const auto cls = ctx.classes();
    d.classes = cls.size();
    std::vector<bool> blocked(cls.size(), false);
    for (Index p : s.points)
      blocked[std::lower_bound(cls.begin(), cls.end(), ctx.class_of_point[p]) - cls.begin()] = true;
    d.unblocked_classes = std::count(blocked.begin(), blocked.end(), false);
  }

  const Bitset pb = point_bits_of(inc, s);
  const Bitset lb = line_bits_of(inc, s);
  for (Index j = 0; j < inc.num_lines(); ++j) {
    const std::size_t meet = kernels::and_popcount(inc.line_bits(j).words(), pb.words());
    if (meet == 0) ++d.skew_lines;
    if (meet == 1 && !covered[dir_slot(j)]) ++d.tangents_uncovered;
  }
  d.skew_lines_projective = d.skew_lines + 1 + d.unblocked_classes;
  for (Index p = 0; p < inc.num_points(); ++p) {
    if (pb.test(p)) continue;
    const std::size_t cover = kernels::and_popcount(inc.point_bits(p).words(), lb.words());
    if (cover == 0) ++d.uncovered_outer_points;
    if (cover == 1) ++d.one_covered_outer_points;
  }
  return d;
}

std::vector<std::string> biaffine_inequality_violations(const Plane& plane, const VertexSet& s) {
  if (plane.ctx.kind != PlaneKind::biaffine) throw geometry_error("biaffine context required");
  const Diagnostics d = diagnostics(plane, s);
  const long long q = plane.ctx.order;
  const long long np = static_cast<long long>(s.points.size());
  const long long nl = static_cast<long long>(s.lines.size());
  const long long n = np + nl;
  const long long u = static_cast<long long>(d.uncovered_directions);
  const long long c = static_cast<long long>(d.unblocked_classes);
  const long long delta = static_cast<long long>(d.skew_lines);
  std::vector<std::string> bad;
  if ((q - 1) * np < q * (q - 1) - n) bad.push_back("points lower bound |P_S| >= q - |S|/(q-1)");
  if ((q - 1) * nl < q * (q - 1) - n) bad.push_back("lines lower bound |L_S| >= q - |S|/(q-1)");
  if ((u + 1) * np < 2 * u * (q - 1)) bad.push_back("uncovered directions |P_S| >= 2(q-1)u/(u+1)");
  if ((c + 1) * nl < 2 * c * (q - 1)) bad.push_back("unblocked classes |L_S| >= 2(q-1)c/(c+1)");
  if (delta > nl + q) bad.push_back("skew lines delta <= |L_S| + q");
  if (delta > nl + q - u + 1) bad.push_back("skew lines delta <= |L_S| + q - u + 1");
  if (static_cast<long long>(d.skew_lines_projective) > nl + q + c + 1)
    bad.push_back("projective skew lines <= |L_S| + q + c + 1");
  if (n < 2 * q - 2) bad.push_back("size |S| >= 2q - 2");
  return bad;
}

std::vector<std::string> affine_inequality_violations(const Plane& plane, const VertexSet& s) {
  if (plane.ctx.kind != PlaneKind::affine) throw geometry_error("affine context required");
  s.validate(plane.inc);
  const long long q = plane.ctx.order;
  std::vector<std::string> bad;
  if (static_cast<long long>(s.size()) <= 3 * q - 4 && static_cast<long long>(s.lines.size()) < 2 * q - 3)
    bad.push_back("lines |L_S| >= 2q - 3 when |S| <= 3q - 4");
  return bad;
}

}  // namespace mdim
