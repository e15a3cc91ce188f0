#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdim/geometry.hpp"
#include "mdim/incidence.hpp"
#include "mdim/metric.hpp"

namespace mdim {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Contents of an `incidence v1` file.
struct IncidenceFile {
  Incidence inc;
  std::string kind;                       // projective|affine|biaffine|gq, empty when absent
  std::vector<Index> direction_of_line;   // empty when absent
  std::vector<Index> class_of_point;      // empty when absent
  Index removed_direction = kNoIndex;

  bool operator==(const IncidenceFile&) const = default;
};

// Annotations are written in the order direction, class, removed_direction, kind.
std::string serialize_incidence(const IncidenceFile& f);
IncidenceFile parse_incidence(std::istream& in);
IncidenceFile parse_incidence(const std::string& text);

IncidenceFile to_file(const Plane& plane);
IncidenceFile to_file(const Incidence& inc, std::string kind);
// A plane whose context carries the ids read from the file (no ambient model).
// Throws geometry_error when the kind is not a plane kind or annotations are missing.
Plane to_plane(const IncidenceFile& f);

std::string serialize_set(const VertexSet& s);
VertexSet parse_set(std::istream& in);
VertexSet parse_set(const std::string& text);

}  // namespace mdim
