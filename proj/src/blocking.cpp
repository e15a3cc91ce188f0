#include "mdim/blocking.hpp"

#include <algorithm>
#include <stdexcept>

namespace mdim {

namespace {

std::vector<char> membership(std::size_t n, const std::vector<Index>& b) {
  std::vector<char> in(n, 0);
  for (Index p : b) {
    if (p >= n) throw geometry_error("point " + std::to_string(p) + " out of range");
    in[p] = 1;
  }
  return in;
}

std::int64_t plane_order(const Incidence& pg) {
  if (pg.num_lines() == 0) throw geometry_error("empty structure");
  return static_cast<std::int64_t>(pg.points_on(0).size()) - 1;
}

// Hitting-set search: add at most `left` points so every line is met.
class Extender {
 public:
  Extender(const Incidence& inc, const std::vector<Index>& b, std::uint64_t budget)
      : inc_(inc), hits_(inc.num_lines(), 0), budget_(budget) {
    for (Index p : b)
      for (Index l : inc.lines_through(p)) ++hits_[l];
    for (Index l = 0; l < inc.num_lines(); ++l) skew_ += hits_[l] == 0;
    for (Index p = 0; p < inc.num_points(); ++p) max_degree_ = std::max(max_degree_, inc.lines_through(p).size());
  }

  bool run(std::uint32_t left) { return dfs(left, 0); }
  const std::vector<Index>& chosen() const { return chosen_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  bool dfs(std::uint32_t left, Index from_line) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (skew_ == 0) return true;
    if (left == 0 || skew_ > left * max_degree_) return false;
    Index line = from_line;
    while (hits_[line] != 0) ++line;
    for (Index p : inc_.points_on(line)) {
      add(p, +1);
      chosen_.push_back(p);
      if (dfs(left - 1, line + 1)) return true;
      chosen_.pop_back();
      add(p, -1);
      if (exhausted_) return false;
    }
    return false;
  }

  void add(Index p, int delta) {
    for (Index l : inc_.lines_through(p)) {
      if (delta > 0 && hits_[l]++ == 0) --skew_;
      if (delta < 0 && --hits_[l] == 0) ++skew_;
    }
  }

  const Incidence& inc_;
  std::vector<std::uint32_t> hits_;
  std::size_t skew_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<Index> chosen_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

BlockingReport analyze_blocking(const Incidence& inc, const std::vector<Index>& b) {
  const auto in = membership(inc.num_points(), b);
  BlockingReport r;
  r.index.assign(inc.num_points(), 0);
  std::vector<char> essential(inc.num_points(), 0);
  for (Index l = 0; l < inc.num_lines(); ++l) {
    std::size_t hits = 0;
    Index last = 0;
    for (Index p : inc.points_on(l))
      if (in[p]) {
        ++hits;
        last = p;
      }
    if (hits == 0) {
      ++r.delta;
      for (Index p : inc.points_on(l)) ++r.index[p];
    } else if (hits == 1) {
      essential[last] = 1;
    }
  }
  r.is_blocking = r.delta == 0;
  for (Index p = 0; p < inc.num_points(); ++p)
    if (essential[p]) r.essential.push_back(p);
  return r;
}

ExtendResult k_extendable(const Incidence& inc, const std::vector<Index>& b, std::uint32_t k, std::uint64_t node_budget) {
  const auto in = membership(inc.num_points(), b);
  Extender ext(inc, b, node_budget);
  ExtendResult r;
  const bool found = ext.run(k);
  r.nodes = ext.nodes();
  if (ext.exhausted()) return r;
  if (!found) {
    r.status = ExtendStatus::not_extendable;
    return r;
  }
  r.extender = ext.chosen();
  std::vector<char> used(in);
  for (Index p : r.extender) used[p] = 1;
  for (Index p = 0; p < inc.num_points() && r.extender.size() < k; ++p)
    if (!used[p]) r.extender.push_back(p);
  if (r.extender.size() < k) {
    r.status = ExtendStatus::not_extendable;
    r.extender.clear();
    return r;
  }
  std::sort(r.extender.begin(), r.extender.end());
  r.status = ExtendStatus::extendable;
  return r;
}

PuncturedCheck punctured_check(const Incidence& pg, const std::vector<Index>& b, std::uint32_t max_k,
                               std::uint64_t node_budget) {
  PuncturedCheck out;
  for (std::uint32_t k = 0; k <= max_k; ++k) {
    const ExtendResult r = k_extendable(pg, b, k, node_budget);
    if (r.status == ExtendStatus::budget_exhausted) return out;
    if (r.status == ExtendStatus::not_extendable) continue;
    out.status = ExtendStatus::extendable;
    out.k = k;
    out.extender = r.extender;
    const BlockingReport rep = analyze_blocking(pg, b);
    const std::int64_t q = plane_order(pg);
    const std::int64_t lower = 2 * q - static_cast<std::int64_t>(b.size()) - k + 1;
    for (Index p = 0; p < pg.num_points() && out.inequalities_hold; ++p) {
      const bool in_k = std::binary_search(out.extender.begin(), out.extender.end(), p);
      const auto ind = static_cast<std::int64_t>(rep.index[p]);
      if (!in_k && ind > k) {
        out.inequalities_hold = false;
        out.violation = "point " + std::to_string(p) + " outside K has index " + std::to_string(ind) + " > " + std::to_string(k);
      } else if (in_k && ind < lower) {
        out.inequalities_hold = false;
        out.violation = "point " + std::to_string(p) + " of K has index " + std::to_string(ind) + " < " + std::to_string(lower);
      }
    }
    return out;
  }
  out.status = ExtendStatus::not_extendable;
  return out;
}

NotExtendableCheck not_extendable_check(const Plane& bg, const VertexSet& s, std::uint32_t k) {
  if (bg.ctx.kind != PlaneKind::biaffine || !bg.ctx.ambient) throw geometry_error("not_extendable_check needs a biaffine plane with ambient");
  const Diagnostics d = diagnostics(bg, s);
  const std::int64_t q = bg.ctx.order;
  const auto size = static_cast<std::int64_t>(s.size());
  const auto np = static_cast<std::int64_t>(s.points.size());
  NotExtendableCheck out;
  out.hypotheses = size <= 3 * q - (static_cast<std::int64_t>(k) + static_cast<std::int64_t>(d.uncovered_directions) + 3) &&
                   static_cast<std::int64_t>(d.unblocked_classes) < 2 * q - np - static_cast<std::int64_t>(k);
  if (!out.hypotheses) return out;
  std::vector<Index> ambient_points;
  for (Index p : s.points) ambient_points.push_back(bg.ctx.point_map[p]);
  out.status = k_extendable(bg.ctx.ambient->inc, ambient_points, k).status;
  out.ok = out.status == ExtendStatus::not_extendable;
  return out;
}

MinBlocking min_blocking(const Incidence& inc) {
  if (inc.num_points() > kMinBlockingPointLimit) throw std::invalid_argument("min_blocking: structure too large");
  MinBlocking out;
  for (std::uint32_t t = 0; t <= inc.num_points(); ++t) {
    Extender ext(inc, {}, UINT64_MAX);
    const bool found = ext.run(t);
    out.nodes += ext.nodes();
    if (found) {
      out.tau = static_cast<std::uint32_t>(ext.chosen().size());
      out.witness = ext.chosen();
      std::sort(out.witness.begin(), out.witness.end());
      return out;
    }
  }
  throw geometry_error("min_blocking: a line without points");
}

std::vector<std::vector<Index>> minimal_blocking_sets(const Incidence& inc) {
  const std::size_t n = inc.num_points();
  if (n > 24) throw std::invalid_argument("minimal_blocking_sets: at most 24 points");
  std::vector<std::uint32_t> masks;
  for (Index l = 0; l < inc.num_lines(); ++l) {
    std::uint32_t m = 0;
    for (Index p : inc.points_on(l)) m |= 1u << p;
    masks.push_back(m);
  }
  std::vector<std::vector<Index>> out;
  for (std::uint32_t set = 0; set < (1u << n); ++set) {
    std::uint32_t essential = 0;
    bool blocking = true;
    for (std::uint32_t m : masks) {
      const std::uint32_t hit = m & set;
      if (hit == 0) {
        blocking = false;
        break;
      }
      if ((hit & (hit - 1)) == 0) essential |= hit;
    }
    if (!blocking || essential != set) continue;
    std::vector<Index> v;
    for (Index p = 0; p < n; ++p)
      if (set >> p & 1u) v.push_back(p);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

InequalityCheck tangent_bound_check(const Incidence& pg, const std::vector<Index>& b) {
  const auto in = membership(pg.num_points(), b);
  const BlockingReport rep = analyze_blocking(pg, b);
  if (!rep.is_blocking) throw std::invalid_argument("tangent_bound_check: set is not blocking");
  const std::int64_t bound = 2 * plane_order(pg) + 1 - static_cast<std::int64_t>(b.size());
  InequalityCheck out;
  for (Index p : rep.essential) {
    std::int64_t tangents = 0;
    for (Index l : pg.lines_through(p)) {
      std::size_t hits = 0;
      for (Index x : pg.points_on(l)) hits += in[x];
      tangents += hits == 1;
    }
    if (tangents < bound) {
      out.ok = false;
      out.violation = "point " + std::to_string(p) + " has " + std::to_string(tangents) + " tangents < " + std::to_string(bound);
      return out;
    }
  }
  return out;
}

InequalityCheck metsch_check(const Incidence& pg, const std::vector<Index>& b) {
  const auto in = membership(pg.num_points(), b);
  const BlockingReport rep = analyze_blocking(pg, b);
  const std::int64_t coeff = 2 * plane_order(pg) + 1 - static_cast<std::int64_t>(std::count(in.begin(), in.end(), 1));
  const auto delta = static_cast<std::int64_t>(rep.delta);
  InequalityCheck out;
  for (Index p = 0; p < pg.num_points(); ++p) {
    if (in[p]) continue;
    const auto ind = static_cast<std::int64_t>(rep.index[p]);
    const std::int64_t value = ind * ind - coeff * ind + delta;
    if (value < 0) {
      out.ok = false;
      out.violation = "point " + std::to_string(p) + " index " + std::to_string(ind) + " value " + std::to_string(value);
      return out;
    }
  }
  return out;
}

}  // namespace mdim
