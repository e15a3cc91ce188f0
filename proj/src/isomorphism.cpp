#include <algorithm>
#include <map>

#include "mdim/geometry.hpp"

namespace mdim {

namespace {

// Incidence graph adjacency with points first, then lines.
std::vector<std::vector<Index>> adjacency(const Incidence& inc) {
  const Index n = static_cast<Index>(inc.num_points());
  std::vector<std::vector<Index>> adj(inc.num_vertices());
  for (Index p = 0; p < n; ++p)
    for (Index j : inc.lines_through(p)) adj[p].push_back(n + j);
  for (Index j = 0; j < inc.num_lines(); ++j)
    for (Index p : inc.points_on(j)) adj[n + j].push_back(p);
  return adj;
}

class IsoSearch {
 public:
  IsoSearch(const Incidence& a, const Incidence& b, std::uint64_t budget)
      : a_(a), b_(b), adj_a_(adjacency(a)), adj_b_(adjacency(b)), budget_(budget) {}

  IsomorphismSearch run() {
    IsomorphismSearch out;
    if (a_.num_points() != b_.num_points() || a_.num_lines() != b_.num_lines()) return out;
    const std::size_t v = a_.num_vertices();
    std::vector<std::uint32_t> ca(v), cb(v);
    for (std::size_t i = 0; i < v; ++i) {
      ca[i] = i < a_.num_points() ? 0 : 1;
      cb[i] = i < b_.num_points() ? 0 : 1;
    }
    const bool found = search(ca, cb);
    out.nodes = nodes_;
    out.budget_exhausted = exhausted_;
    if (found) out.map = std::move(result_);
    return out;
  }

 private:
  // Joint colour refinement; false when the colour histograms diverge.
  bool refine(std::vector<std::uint32_t>& ca, std::vector<std::uint32_t>& cb) const {
    std::size_t classes = 0;
    {
      std::vector<std::uint32_t> all(ca);
      all.insert(all.end(), cb.begin(), cb.end());
      std::sort(all.begin(), all.end());
      classes = std::unique(all.begin(), all.end()) - all.begin();
    }
    for (;;) {
      std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
      auto signature = [](const std::vector<std::vector<Index>>& adj, const std::vector<std::uint32_t>& c, Index x) {
        std::vector<std::uint32_t> sig;
        sig.reserve(adj[x].size() + 1);
        for (Index y : adj[x]) sig.push_back(c[y]);
        std::sort(sig.begin(), sig.end());
        sig.insert(sig.begin(), c[x]);
        return sig;
      };
      std::vector<std::vector<std::uint32_t>> sa(ca.size()), sb(cb.size());
      for (Index x = 0; x < ca.size(); ++x) {
        sa[x] = signature(adj_a_, ca, x);
        ids.emplace(sa[x], 0);
      }
      for (Index x = 0; x < cb.size(); ++x) {
        sb[x] = signature(adj_b_, cb, x);
        ids.emplace(sb[x], 0);
      }
      std::uint32_t next = 0;
      for (auto& [k, id] : ids) id = next++;
      std::vector<std::size_t> hist(next, 0);
      for (Index x = 0; x < ca.size(); ++x) {
        ca[x] = ids[sa[x]];
        ++hist[ca[x]];
      }
      for (Index x = 0; x < cb.size(); ++x) {
        cb[x] = ids[sb[x]];
        if (hist[cb[x]]-- == 0) return false;
      }
      for (auto h : hist)
        if (h != 0) return false;
      if (next == classes) return true;
      classes = next;
    }
  }

  bool search(std::vector<std::uint32_t> ca, std::vector<std::uint32_t> cb) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (!refine(ca, cb)) return false;

    const std::uint32_t n_colors = *std::max_element(ca.begin(), ca.end()) + 1;
    std::vector<std::size_t> count(n_colors, 0);
    for (auto c : ca) ++count[c];
    std::uint32_t cell = n_colors;
    for (std::uint32_t c = 0; c < n_colors; ++c)
      if (count[c] > 1 && (cell == n_colors || count[c] > count[cell])) cell = c;

    if (cell == n_colors) return accept(ca, cb);

    Index pick = 0;
    while (ca[pick] != cell) ++pick;
    for (Index cand = 0; cand < cb.size(); ++cand) {
      if (cb[cand] != cell) continue;
      auto na = ca, nb = cb;
      na[pick] = n_colors;
      nb[cand] = n_colors;
      if (search(std::move(na), std::move(nb))) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  bool accept(const std::vector<std::uint32_t>& ca, const std::vector<std::uint32_t>& cb) {
    std::vector<Index> target_of_color(cb.size());
    for (Index x = 0; x < cb.size(); ++x) target_of_color[cb[x]] = x;
    const Index np = static_cast<Index>(a_.num_points());
    IncidenceIsomorphism m;
    m.point_map.resize(a_.num_points());
    m.line_map.resize(a_.num_lines());
    for (Index p = 0; p < np; ++p) m.point_map[p] = target_of_color[ca[p]];
    for (Index j = 0; j < a_.num_lines(); ++j) m.line_map[j] = target_of_color[ca[np + j]] - np;
    for (Index j = 0; j < a_.num_lines(); ++j)
      for (Index p : a_.points_on(j))
        if (!b_.incident(m.point_map[p], m.line_map[j])) return false;
    result_ = std::move(m);
    return true;
  }

  const Incidence& a_;
  const Incidence& b_;
  std::vector<std::vector<Index>> adj_a_, adj_b_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  IncidenceIsomorphism result_;
};

}  // namespace

IsomorphismSearch find_isomorphism(const Incidence& source, const Incidence& target, std::uint64_t node_budget) {
  return IsoSearch(source, target, node_budget).run();
}

}  // namespace mdim
