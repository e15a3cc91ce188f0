#include "mdim/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <set>
#include <sstream>

namespace mdim {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::uint64_t number(const std::string& tok, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw parse_error("line " + std::to_string(line_no) + ": expected a number, got '" + tok + "'");
  return v;
}

Index index(const std::string& tok, std::size_t line_no, std::size_t bound) {
  const std::uint64_t v = number(tok, line_no);
  if (v >= bound) throw parse_error("line " + std::to_string(line_no) + ": index " + tok + " out of range");
  return static_cast<Index>(v);
}

bool read_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

const std::set<std::string> kKinds = {"projective", "affine", "biaffine", "gq"};

}  // namespace

std::string serialize_incidence(const IncidenceFile& f) {
  std::ostringstream out;
  out << "incidence v1\n";
  out << "points " << f.inc.num_points() << "\n";
  out << "lines " << f.inc.num_lines() << "\n";
  for (Index j = 0; j < f.inc.num_lines(); ++j) {
    out << "L " << j << ":";
    for (Index p : f.inc.points_on(j)) out << ' ' << p;
    out << "\n";
  }
  for (Index j = 0; j < f.direction_of_line.size(); ++j) out << "direction " << j << ' ' << f.direction_of_line[j] << "\n";
  for (Index i = 0; i < f.class_of_point.size(); ++i) out << "class " << i << ' ' << f.class_of_point[i] << "\n";
  if (f.removed_direction != kNoIndex) out << "removed_direction " << f.removed_direction << "\n";
  if (!f.kind.empty()) out << "kind " << f.kind << "\n";
  return out.str();
}

IncidenceFile parse_incidence(std::istream& in) {
  std::string line;
  std::size_t no = 0;
  if (!read_line(in, line, no) || split(line) != std::vector<std::string>{"incidence", "v1"})
    throw parse_error("missing 'incidence v1' header");
  auto header = [&](const char* key) {
    if (!read_line(in, line, no)) throw parse_error(std::string("missing '") + key + "' line");
    const auto t = split(line);
    if (t.size() != 2 || t[0] != key) throw parse_error("line " + std::to_string(no) + ": expected '" + key + " <n>'");
    return static_cast<std::size_t>(number(t[1], no));
  };
  const std::size_t n_points = header("points");
  const std::size_t n_lines = header("lines");

  std::vector<std::vector<Index>> lines(n_lines);
  std::vector<char> seen_line(n_lines, 0);
  IncidenceFile f;
  std::vector<char> seen_dir, seen_class;
  while (read_line(in, line, no)) {
    auto t = split(line);
    const std::string& key = t[0];
    if (key == "L") {
      if (t.size() < 2 || t[1].empty() || t[1].back() != ':')
        throw parse_error("line " + std::to_string(no) + ": expected 'L <j>: points'");
      const Index j = index(t[1].substr(0, t[1].size() - 1), no, n_lines);
      if (seen_line[j]) throw parse_error("line " + std::to_string(no) + ": line " + std::to_string(j) + " repeated");
      seen_line[j] = 1;
      for (std::size_t i = 2; i < t.size(); ++i) {
        const Index p = index(t[i], no, n_points);
        if (!lines[j].empty() && p <= lines[j].back())
          throw parse_error("line " + std::to_string(no) + ": point indices must increase");
        lines[j].push_back(p);
      }
    } else if (key == "direction") {
      if (t.size() != 3) throw parse_error("line " + std::to_string(no) + ": expected 'direction <j> <d>'");
      if (f.direction_of_line.empty()) {
        f.direction_of_line.assign(n_lines, kNoIndex);
        seen_dir.assign(n_lines, 0);
      }
      const Index j = index(t[1], no, n_lines);
      seen_dir[j] = 1;
      f.direction_of_line[j] = static_cast<Index>(number(t[2], no));
    } else if (key == "class") {
      if (t.size() != 3) throw parse_error("line " + std::to_string(no) + ": expected 'class <i> <c>'");
      if (f.class_of_point.empty()) {
        f.class_of_point.assign(n_points, kNoIndex);
        seen_class.assign(n_points, 0);
      }
      const Index i = index(t[1], no, n_points);
      seen_class[i] = 1;
      f.class_of_point[i] = static_cast<Index>(number(t[2], no));
    } else if (key == "removed_direction") {
      if (t.size() != 2) throw parse_error("line " + std::to_string(no) + ": expected 'removed_direction <d>'");
      f.removed_direction = static_cast<Index>(number(t[1], no));
    } else if (key == "kind") {
      if (t.size() != 2 || !kKinds.count(t[1])) throw parse_error("line " + std::to_string(no) + ": unknown kind");
      f.kind = t[1];
    } else {
      throw parse_error("line " + std::to_string(no) + ": unknown record '" + key + "'");
    }
  }
  if (std::count(seen_line.begin(), seen_line.end(), 0) != 0) throw parse_error("not every line is listed");
  if (std::count(seen_dir.begin(), seen_dir.end(), 0) != 0) throw parse_error("direction missing for some line");
  if (std::count(seen_class.begin(), seen_class.end(), 0) != 0) throw parse_error("class missing for some point");
  try {
    f.inc = Incidence(n_points, std::move(lines));
  } catch (const geometry_error& e) {
    throw parse_error(e.what());
  }
  return f;
}

IncidenceFile parse_incidence(const std::string& text) {
  std::istringstream in(text);
  return parse_incidence(in);
}

IncidenceFile to_file(const Incidence& inc, std::string kind) {
  IncidenceFile f;
  f.inc = inc;
  f.kind = std::move(kind);
  return f;
}

IncidenceFile to_file(const Plane& plane) {
  IncidenceFile f = to_file(plane.inc, to_string(plane.ctx.kind));
  f.direction_of_line = plane.ctx.direction_of_line;
  f.class_of_point = plane.ctx.class_of_point;
  f.removed_direction = plane.ctx.removed_direction;
  return f;
}

Plane to_plane(const IncidenceFile& f) {
  Plane p;
  p.inc = f.inc;
  if (f.kind == "projective")
    p.ctx.kind = PlaneKind::projective;
  else if (f.kind == "affine")
    p.ctx.kind = PlaneKind::affine;
  else if (f.kind == "biaffine")
    p.ctx.kind = PlaneKind::biaffine;
  else
    throw geometry_error("structure is not a plane (kind '" + f.kind + "')");
  if (f.inc.num_lines() == 0) throw geometry_error("plane without lines");
  const std::size_t line_size = f.inc.points_on(0).size();
  p.ctx.order = static_cast<std::uint32_t>(p.ctx.kind == PlaneKind::projective ? line_size - 1 : line_size);
  if (p.ctx.kind != PlaneKind::projective) {
    if (f.direction_of_line.size() != f.inc.num_lines()) throw geometry_error("plane file lacks line directions");
    p.ctx.direction_of_line = f.direction_of_line;
  }
  if (p.ctx.kind == PlaneKind::biaffine) {
    if (f.class_of_point.size() != f.inc.num_points()) throw geometry_error("plane file lacks point classes");
    p.ctx.class_of_point = f.class_of_point;
    p.ctx.removed_direction = f.removed_direction;
  }
  return p;
}

std::string serialize_set(const VertexSet& s) {
  VertexSet n = s;
  n.normalize();
  std::ostringstream out;
  out << "set v1\n";
  for (Index p : n.points) out << "P " << p << "\n";
  for (Index l : n.lines) out << "L " << l << "\n";
  return out.str();
}

VertexSet parse_set(std::istream& in) {
  std::string line;
  std::size_t no = 0;
  if (!read_line(in, line, no) || split(line) != std::vector<std::string>{"set", "v1"})
    throw parse_error("missing 'set v1' header");
  VertexSet s;
  while (read_line(in, line, no)) {
    const auto t = split(line);
    if (t.size() != 2 || (t[0] != "P" && t[0] != "L"))
      throw parse_error("line " + std::to_string(no) + ": expected 'P <i>' or 'L <j>'");
    const auto v = static_cast<Index>(number(t[1], no));
    (t[0] == "P" ? s.points : s.lines).push_back(v);
  }
  const std::size_t before = s.size();
  s.normalize();
  if (s.size() != before) throw parse_error("duplicate element in set");
  return s;
}

VertexSet parse_set(const std::string& text) {
  std::istringstream in(text);
  return parse_set(in);
}

}  // namespace mdim
