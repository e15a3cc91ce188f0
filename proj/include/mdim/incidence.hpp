#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mdim/bitset.hpp"

namespace mdim {

using Index = std::uint32_t;

struct geometry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point-line incidence structure with 0-based point and line indices.
//
// In the incidence graph, vertex v < num_points() is point v and vertex
// num_points() + j is line j.
class Incidence {
 public:
  Incidence() = default;
  // Each entry of points_of_line is sorted and deduplicated on construction.
  // Throws geometry_error for out-of-range indices or when two distinct
  // points share more than one line.
  Incidence(std::size_t n_points, std::vector<std::vector<Index>> points_of_line);

  std::size_t num_points() const { return lines_of_point_.size(); }
  std::size_t num_lines() const { return points_of_line_.size(); }
  std::size_t num_vertices() const { return num_points() + num_lines(); }

  std::span<const Index> points_on(Index line) const { return points_of_line_[line]; }
  std::span<const Index> lines_through(Index point) const { return lines_of_point_[point]; }
  const std::vector<std::vector<Index>>& all_lines() const { return points_of_line_; }

  bool incident(Index point, Index line) const { return line_bits_[line].test(point); }
  const Bitset& line_bits(Index line) const { return line_bits_[line]; }
  const Bitset& point_bits(Index point) const { return point_bits_[point]; }

  // The common line of two distinct points, if any.
  std::optional<Index> join(Index a, Index b) const;
  // The common point of two distinct lines, if any.
  std::optional<Index> meet(Index a, Index b) const;
  bool collinear(Index a, Index b) const { return a == b || join(a, b).has_value(); }

  // Points and lines swapped.
  Incidence dual() const;

  bool operator==(const Incidence& other) const { return points_of_line_ == other.points_of_line_ && num_points() == other.num_points(); }

 private:
  std::vector<std::vector<Index>> points_of_line_;
  std::vector<std::vector<Index>> lines_of_point_;
  std::vector<Bitset> line_bits_;   // over points
  std::vector<Bitset> point_bits_;  // over lines
};

}  // namespace mdim
