#include "mdim/incidence.hpp"

#include <algorithm>
#include <string>

namespace mdim {

Incidence::Incidence(std::size_t n_points, std::vector<std::vector<Index>> points_of_line)
    : points_of_line_(std::move(points_of_line)), lines_of_point_(n_points) {
  line_bits_.reserve(points_of_line_.size());
  for (Index j = 0; j < points_of_line_.size(); ++j) {
    auto& pts = points_of_line_[j];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Bitset bits(n_points);
    for (Index p : pts) {
      if (p >= n_points)
        throw geometry_error("line " + std::to_string(j) + " lists point " + std::to_string(p) + " out of range");
      bits.set(p);
      lines_of_point_[p].push_back(j);
    }
    line_bits_.push_back(std::move(bits));
  }
  point_bits_.reserve(n_points);
  for (Index p = 0; p < n_points; ++p) {
    Bitset bits(points_of_line_.size());
    for (Index j : lines_of_point_[p]) bits.set(j);
    point_bits_.push_back(std::move(bits));
  }
  // Partial linear space: two distinct points share at most one line.
  std::vector<std::int64_t> seen(n_points, -1);
  for (Index p = 0; p < n_points; ++p)
    for (Index j : lines_of_point_[p])
      for (Index x : points_of_line_[j]) {
        if (x == p) continue;
        if (seen[x] == static_cast<std::int64_t>(p))
          throw geometry_error("points " + std::to_string(p) + " and " + std::to_string(x) +
                               " share more than one line");
        seen[x] = p;
      }
}

std::optional<Index> Incidence::join(Index a, Index b) const {
  if (a == b) return std::nullopt;
  for (Index j : lines_of_point_[a])
    if (line_bits_[j].test(b)) return j;
  return std::nullopt;
}

std::optional<Index> Incidence::meet(Index a, Index b) const {
  if (a == b) return std::nullopt;
  for (Index p : points_of_line_[a])
    if (point_bits_[p].test(b)) return p;
  return std::nullopt;
}

Incidence Incidence::dual() const { return Incidence(num_lines(), lines_of_point_); }

}  // namespace mdim
