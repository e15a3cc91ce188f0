#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mdim/geometry.hpp"
#include "mdim/incidence.hpp"

namespace mdim {

// A vertex set S = P_S u L_S of an incidence graph.
struct VertexSet {
  std::vector<Index> points;  // sorted, distinct
  std::vector<Index> lines;   // sorted, distinct

  std::size_t size() const { return points.size() + lines.size(); }
  bool empty() const { return points.empty() && lines.empty(); }
  // Sort and deduplicate both parts.
  void normalize();
  // Graph vertex ids (points first, then n_points + line).
  std::vector<Index> vertices(std::size_t n_points) const;
  static VertexSet from_vertices(std::span<const Index> vertices, std::size_t n_points);
  // Throws geometry_error when an index is out of range.
  void validate(const Incidence& inc) const;
  bool contains_point(Index p) const;
  bool contains_line(Index l) const;

  bool operator==(const VertexSet&) const = default;
};

inline constexpr std::uint8_t kUnreachable = 0xff;

// Breadth-first distances in the incidence graph from `vertex` to every
// vertex. Throws geometry_error if the graph is disconnected.
std::vector<std::uint8_t> bfs_distances(const Incidence& inc, Index vertex);

// Incidence-graph distances. The full matrix is cached when the graph has at
// most kMatrixLimit vertices; rows are otherwise computed on demand.
class Distances {
 public:
  static constexpr std::size_t kMatrixLimit = 4096;

  explicit Distances(const Incidence& inc);

  std::size_t num_vertices() const { return n_; }
  bool cached() const { return !matrix_.empty(); }
  // Row of distances from v. The span is valid until the next call when uncached.
  std::span<const std::uint8_t> row(Index v) const;
  std::uint8_t operator()(Index u, Index v) const { return row(u)[v]; }
  // Exact when cached, otherwise twice the eccentricity of vertex 0 (an upper bound).
  std::uint8_t diameter() const { return diameter_; }

 private:
  const Incidence* inc_;
  std::size_t n_;
  std::vector<std::uint8_t> matrix_;
  mutable std::vector<std::uint8_t> scratch_;
  std::uint8_t diameter_ = 0;
};

// Distances of v to the elements of S, points first, then lines.
std::vector<std::uint8_t> signature(const Distances& d, std::size_t n_points, const VertexSet& s, Index v);

struct ResolveVerdict {
  bool resolving = false;
  // Lexicographically first pair of distinct vertices with equal signatures.
  std::optional<std::pair<Index, Index>> witness;
};

enum class Side { points, lines };

ResolveVerdict is_resolving(const Incidence& inc, const VertexSet& s);
ResolveVerdict is_resolving(const Incidence& inc, const Distances& d, const VertexSet& s);
// Only vertices of one side need distinct signatures.
ResolveVerdict is_semi_resolving(const Incidence& inc, const VertexSet& s, Side side);
ResolveVerdict is_semi_resolving(const Incidence& inc, const Distances& d, const VertexSet& s, Side side);

// Statistics for a vertex set of an affine or biaffine plane.
struct Diagnostics {
  std::size_t directions = 0;           // q+1 affine, q biaffine
  std::size_t uncovered_directions = 0;  // u
  std::size_t classes = 0;               // q biaffine, 0 affine
  std::size_t unblocked_classes = 0;     // c
  std::size_t skew_lines = 0;            // delta: lines of the structure skew to P_S
  std::size_t skew_lines_projective = 0; // skew lines of the ambient plane (l_inf and unblocked classes included)
  std::size_t tangents_uncovered = 0;    // tangent lines with an uncovered direction
  std::size_t one_covered_outer_points = 0;
  std::size_t uncovered_outer_points = 0;
};

// Throws geometry_error for a projective context.
Diagnostics diagnostics(const Plane& plane, const VertexSet& s);

// Inequalities every resolving set of a biaffine (resp. affine) plane must
// satisfy. Each entry names the inequality that failed; empty when all hold.
std::vector<std::string> biaffine_inequality_violations(const Plane& plane, const VertexSet& s);
std::vector<std::string> affine_inequality_violations(const Plane& plane, const VertexSet& s);

}  // namespace mdim
