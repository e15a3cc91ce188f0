// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Usage: mdim_acceptance [-v] [criterion numbers...]
// -v prints each criterion's full report.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mdim/blocking.hpp"
#include "mdim/bounds.hpp"
#include "mdim/characterizations.hpp"
#include "mdim/constructions.hpp"
#include "mdim/search.hpp"

using namespace mdim;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream report;  // deterministic; compared across thread counts
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    report << what << (ok ? " ok" : " FAILED") << "\n";
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  void note(const std::string& line) { report << line << "\n"; }
};

unsigned g_threads = 1;
bool g_collect = true;

// Resolving sets met during the run, for the diagnostic inequalities.
struct Collected {
  std::string origin;
  std::shared_ptr<const Plane> plane;
  VertexSet set;
};
std::vector<Collected> g_collected;
std::map<std::uint32_t, std::uint32_t> g_bg_mu;

std::shared_ptr<const Plane> shared(Plane p) { return std::make_shared<const Plane>(std::move(p)); }

void collect(const std::string& origin, const std::shared_ptr<const Plane>& plane, const VertexSet& s) {
  if (g_collect && plane->ctx.kind != PlaneKind::projective) g_collected.push_back({origin, plane, s});
}

SearchBudget budget() {
  SearchBudget b;
  b.threads = g_threads;
  return b;
}

std::string str(std::int64_t v) { return std::to_string(v); }

std::map<std::pair<Index, Index>, int> pair_counts(const Incidence& inc) {
  std::map<std::pair<Index, Index>, int> m;
  for (const auto& line : inc.all_lines())
    for (std::size_t i = 0; i < line.size(); ++i)
      for (std::size_t j = i + 1; j < line.size(); ++j) ++m[{line[i], line[j]}];
  return m;
}

void geometry_counts(Outcome& o) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    const Incidence inc = projective_plane(q).inc;
    const std::size_t n = q * q + q + 1;
    bool sizes = inc.num_points() == n && inc.num_lines() == n;
    for (const auto& line : inc.all_lines()) sizes = sizes && line.size() == q + 1;
    const auto pairs = pair_counts(inc);
    bool unique = pairs.size() == n * (n - 1) / 2;
    for (const auto& [pair, c] : pairs) unique = unique && c == 1;
    o.expect(sizes, "PG(2," + str(q) + ") counts");
    o.expect(unique, "PG(2," + str(q) + ") unique joins");
  }
}

void biaffine_combinatorics(Outcome& o) {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    const Plane bg = biaffine_plane(q);
    const Incidence& inc = bg.inc;
    const std::string tag = "BG(2," + str(q) + ")";
    bool counts = inc.num_points() == q * q && inc.num_lines() == q * q;
    for (Index p = 0; p < inc.num_points(); ++p) counts = counts && inc.lines_through(p).size() == q;
    for (Index l = 0; l < inc.num_lines(); ++l) counts = counts && inc.points_on(l).size() == q;
    o.expect(counts, tag + " q^2 points and lines, q-regular");

    std::map<Index, std::size_t> classes, parallel;
    for (Index c : bg.ctx.class_of_point) ++classes[c];
    for (Index d : bg.ctx.direction_of_line) ++parallel[d];
    bool partitions = classes.size() == q && parallel.size() == q;
    for (const auto& [c, n] : classes) partitions = partitions && n == q;
    for (const auto& [d, n] : parallel) partitions = partitions && n == q;
    for (Index a = 0; a < inc.num_lines(); ++a)
      for (Index b = a + 1; b < inc.num_lines(); ++b)
        if (bg.ctx.direction_of_line[a] == bg.ctx.direction_of_line[b]) partitions = partitions && !inc.meet(a, b);
    for (Index a = 0; a < inc.num_points(); ++a)
      for (Index b = a + 1; b < inc.num_points(); ++b)
        partitions = partitions && inc.join(a, b).has_value() == (bg.ctx.class_of_point[a] != bg.ctx.class_of_point[b]);
    o.expect(partitions, tag + " class and parallel partitions q x q");

    bool unique = true;
    for (Index p = 0; p < inc.num_points() && unique; ++p)
      for (Index l = 0; l < inc.num_lines(); ++l) {
        if (inc.incident(p, l)) continue;
        int missing = 0, far = 0;
        for (Index m : inc.lines_through(p)) missing += !inc.meet(m, l).has_value();
        for (Index x : inc.points_on(l)) far += !inc.join(p, x).has_value();
        unique = unique && missing == 1 && far == 1;
      }
    o.expect(unique, tag + " non-incidence uniqueness");
  }
}

void gq_axioms(Outcome& o) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const SymplecticSpace w = w_q(q);
    const std::size_t count = (q + 1) * (q * q + 1);
    const GqCheck a = check_gq(w.wq);
    const GqCheck b = check_gq(w.wq.dual());
    o.expect(a.ok && a.s == q && a.t == q, "W(" + str(q) + ") order (q,q)");
    o.expect(b.ok && b.s == q && b.t == q, "dual W(" + str(q) + ") order (q,q)");
    o.expect(w.wq.num_points() == count && w.wq.num_lines() == count, "W(" + str(q) + ") counts (s+1)(st+1)");
  }
}

void exact_values(Outcome& o) {
  for (const auto& [q, expect] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {4, 6}, {5, 9}}) {
    const auto bg = shared(biaffine_plane(q));
    const MuResult r = exact_mu(bg->inc, 3 * q, budget());
    const bool ok = r.status == MuStatus::exact && r.mu == expect && is_resolving(bg->inc, r.basis).resolving;
    o.note("BG(2," + str(q) + ") nodes=" + str(static_cast<std::int64_t>(r.nodes)));
    o.expect(ok, "mu(BG(2," + str(q) + ")) = " + str(r.mu) + " expected " + str(expect));
    const CrossCheck c = crosscheck(bounds_for(Family::biaffine_desarguesian, q), r.mu);
    o.expect(c.ok, "crosscheck BG(2," + str(q) + ") " + c.finding);
    if (r.status == MuStatus::exact) {
      g_bg_mu[q] = r.mu;
      collect("exact basis BG(2," + str(q) + ")", bg, r.basis);
    }
  }
}

void grid_metric_dimension(Outcome& o) {
  for (std::uint32_t s : {2u, 3u, 4u}) {
    const MuResult r = exact_mu(grid_gq(s), 12, budget());
    o.expect(r.status == MuStatus::exact && r.mu == grid_phi(s),
             "mu(GQ(" + str(s) + ",1)) = " + str(r.mu) + " phi = " + str(grid_phi(s)));
    o.expect(crosscheck(bounds_for(Family::grid, s), r.mu).ok, "crosscheck grid s=" + str(s));
  }
  for (std::uint32_t s = 2; s <= 12; ++s) {
    const VertexSet set = grid_resolving(s);
    o.expect(set.size() == grid_phi(s) && is_resolving(grid_gq(s), set).resolving,
             "grid_resolving(" + str(s) + ") size " + str(static_cast<std::int64_t>(set.size())));
  }
}

void affine_constructions(Outcome& o) {
  for (std::uint32_t q : {23u, 25u}) {
    const auto af = shared(affine_plane(q));
    for (int variant = 1; variant <= 4; ++variant) {
      const std::string tag = "affine_basis(" + str(q) + "," + str(variant) + ")";
      try {
        const VertexSet s = affine_basis(*af, variant);
        const bool ok = s.size() == 3 * q - 4 && verify_affine(*af, s).all() && is_resolving(af->inc, s).resolving;
        o.expect(ok, tag + " size " + str(static_cast<std::int64_t>(s.size())));
        collect(tag, af, s);
        const VertexSet lifted = lift_affine(*af, s);
        const Plane pg = projective_plane(af->ctx.ambient);
        o.expect(lifted.size() == 4 * q - 4 && verify_projective(pg, lifted).all() && is_resolving(pg.inc, lifted).resolving,
                 "lift of " + tag + " size " + str(static_cast<std::int64_t>(lifted.size())));
      } catch (const std::exception& e) {
        o.expect(false, tag + ": " + e.what());
      }
    }
  }
}

void biaffine_construction(Outcome& o) {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    const auto bg = shared(biaffine_plane(q));
    for (std::uint32_t t = 1; t + 3 <= q; ++t) {
      const std::string tag = "biaffine_3q6(" + str(q) + ", t=" + str(t) + ")";
      try {
        const VertexSet s = biaffine_3q6(*bg, t);
        o.expect(s.size() == 3 * q - 6 && verify_biaffine(*bg, s).all() && is_resolving(bg->inc, s).resolving,
                 tag + " size " + str(static_cast<std::int64_t>(s.size())));
        collect(tag, bg, s);
        if (t == 1 && g_bg_mu.count(q))
          o.expect(s.size() == g_bg_mu[q], tag + " size equals mu " + str(g_bg_mu[q]));
      } catch (const std::exception& e) {
        o.expect(false, tag + ": " + e.what());
        if (t == 1 && g_bg_mu.count(q)) o.expect(false, "biaffine_3q6(" + str(q) + ") size equals mu " + str(g_bg_mu[q]));
      }
    }
  }
}

void characterization_equivalence(Outcome& o) {
  std::mt19937_64 rng(20240601);
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u}) {
    for (const auto& plane : {shared(projective_plane(q)), shared(affine_plane(q)), shared(biaffine_plane(q))}) {
      const Incidence& inc = plane->inc;
      const std::size_t n = inc.num_vertices();
      const std::vector<Index> seed = greedy_upper(inc).vertices(inc.num_points());
      std::uniform_int_distribution<Index> vertex(0, static_cast<Index>(n - 1));
      int disagreements = 0, positives = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        std::set<Index> pick;
        if (trial % 2 == 0) {
          // near a known resolving set
          pick.insert(seed.begin(), seed.end());
          for (int drop = static_cast<int>(rng() % 3); drop > 0 && !pick.empty(); --drop) {
            auto it = pick.begin();
            std::advance(it, static_cast<long>(rng() % pick.size()));
            pick.erase(it);
          }
          for (int add = static_cast<int>(rng() % 4); add > 0; --add) pick.insert(vertex(rng));
        } else {
          const std::size_t size = 2 * q + rng() % (3 * q);
          while (pick.size() < size) pick.insert(vertex(rng));
        }
        const std::vector<Index> v(pick.begin(), pick.end());
        const VertexSet s = VertexSet::from_vertices(v, inc.num_points());
        const bool generic = is_resolving(inc, s).resolving;
        positives += generic;
        disagreements += verify_conditions(*plane, s).all() != generic;
        if (generic) collect("random resolving set q=" + str(q), plane, s);
      }
      const std::string tag = std::string(to_string(plane->ctx.kind)) + " q=" + str(q);
      o.note(tag + " resolving=" + str(positives) + "/1000");
      o.expect(disagreements == 0, tag + " disagreements " + str(disagreements));
    }
  }
}

void wq_constructions(Outcome& o) {
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    const SymplecticSpace w = w_q(q);
    const PointSrs r = wq_point_srs(w);
    o.expect(r.set.size() == 4 * q && is_semi_resolving(w.wq, r.set, Side::points).resolving,
             "wq_point_srs(" + str(q) + ") size " + str(static_cast<std::int64_t>(r.set.size())));
  }
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const SymplecticSpace w = w_q(q);
    const LineSrs r = gq_line_srs_odd(w);
    o.expect(r.set.size() == 5 * q - 4 && is_semi_resolving(w.wq.dual(), r.set, Side::points).resolving,
             "gq_line_srs_odd(" + str(q) + ") size " + str(static_cast<std::int64_t>(r.set.size())));
  }
  for (std::uint32_t q : {3u, 4u, 5u, 8u}) {
    const SymplecticSpace w = w_q(q);
    const std::size_t bound = q % 2 == 0 ? 8 * q : 8 * q - 1;
    try {
      const WqResolving r = wq_resolving(w);
      o.expect(r.set.size() <= bound && is_resolving(w.wq, r.set).resolving,
               "wq_resolving(" + str(q) + ") size " + str(static_cast<std::int64_t>(r.set.size())) + " <= " +
                   str(static_cast<std::int64_t>(bound)) + (q % 2 ? r.aligned ? " aligned" : " unaligned" : ""));
      o.expect(crosscheck(bounds_for(Family::wq, q), static_cast<std::int64_t>(r.set.size()), Computed::upper_bound).ok,
               "crosscheck W(" + str(q) + ")");
    } catch (const std::exception& e) {
      o.expect(false, "wq_resolving(" + str(q) + "): " + e.what());
    }
  }
}

void gq_lower_bound(Outcome& o) {
  const CertifyResult r = certify_lower(w_q(3).wq, 4, budget());
  o.note("certify nodes=" + str(static_cast<std::int64_t>(r.nodes)));
  o.expect(r.status == CertifyStatus::no_resolving_set, "no resolving 4-set in W(3)");
  const BoundEntry e = bounds_for(Family::gq_general, 3);
  o.expect(e.lower == 5, "table lower bound 4q-7 = 5");
  o.expect(crosscheck(e, 5, Computed::lower_bound).ok, "certified lower bound 5 consistent with the table");
}

void blocking_suite(Outcome& o) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const MinBlocking m = min_blocking(affine_plane(q).inc);
    o.expect(m.tau == 2 * q - 1, "tau(AG(2," + str(q) + ")) = " + str(m.tau));
  }
  const Incidence pg3 = projective_plane(3).inc;
  const auto minimal = minimal_blocking_sets(pg3);
  int tangent_violations = 0;
  for (const auto& b : minimal) tangent_violations += !tangent_bound_check(pg3, b).ok;
  o.expect(tangent_violations == 0 && !minimal.empty(),
           "tangent bound on " + str(static_cast<std::int64_t>(minimal.size())) + " minimal blocking sets of PG(2,3)");
  std::mt19937_64 rng(77);
  for (std::uint32_t q : {4u, 5u, 7u, 8u}) {
    const Incidence pg = projective_plane(q).inc;
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Index> b;
      const double density = static_cast<double>(rng() % 1000) / 1000.0;
      for (Index p = 0; p < pg.num_points(); ++p)
        if (static_cast<double>(rng() % 1000) / 1000.0 < density) b.push_back(p);
      violations += !metsch_check(pg, b).ok;
    }
    o.expect(violations == 0, "Metsch inequality PG(2," + str(q) + ") violations " + str(violations));
  }
}

void diagnostic_inequalities(Outcome& o) {
  int violations = 0;
  std::size_t affine = 0, biaffine = 0;
  for (const Collected& c : g_collected) {
    const bool is_affine = c.plane->ctx.kind == PlaneKind::affine;
    (is_affine ? affine : biaffine) += 1;
    const auto v = is_affine ? affine_inequality_violations(*c.plane, c.set) : biaffine_inequality_violations(*c.plane, c.set);
    for (const std::string& what : v) {
      if (violations < 10) o.expect(false, c.origin + ": " + what);
      ++violations;
    }
  }
  o.expect(violations == 0 && affine > 0 && biaffine > 0,
           "checked " + str(static_cast<std::int64_t>(affine)) + " affine and " + str(static_cast<std::int64_t>(biaffine)) +
               " biaffine resolving sets, violations " + str(violations));
}

void triad_property(Outcome& o) {
  const Incidence q3 = w_q(3).wq.dual();
  std::size_t triads = 0, bad = 0;
  for (Index x = 0; x < q3.num_points(); ++x)
    for (Index y = x + 1; y < q3.num_points(); ++y) {
      if (q3.collinear(x, y)) continue;
      for (Index z = y + 1; z < q3.num_points(); ++z) {
        if (q3.collinear(x, z) || q3.collinear(y, z)) continue;
        const std::size_t c = triad_centers(q3, x, y, z);
        ++triads;
        bad += c != 0 && c != 2;
      }
    }
  o.expect(bad == 0 && triads > 0, "all " + str(static_cast<std::int64_t>(triads)) + " triads of Q(4,3) have 0 or 2 centers");
  const Incidence q5 = w_q(5).wq.dual();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(q5.num_points() - 1));
  std::size_t sampled = 0;
  bad = 0;
  while (sampled < 100000) {
    const Index x = pick(rng), y = pick(rng), z = pick(rng);
    if (x == y || x == z || y == z || q5.collinear(x, y) || q5.collinear(x, z) || q5.collinear(y, z)) continue;
    const std::size_t c = triad_centers(q5, x, y, z);
    ++sampled;
    bad += c != 0 && c != 2;
  }
  o.expect(bad == 0, "100000 sampled triads of Q(4,5) have 0 or 2 centers");
}

struct Criterion {
  int id;
  const char* name;
  double seconds;  // runtime target
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "geometry counts", 5, geometry_counts},
      {2, "biaffine combinatorics", 5, biaffine_combinatorics},
      {3, "GQ axioms", 30, gq_axioms},
      {4, "exact values of mu(BG(2,q))", 6 * 3600, exact_values},
      {5, "grid metric dimension", 600, grid_metric_dimension},
      {6, "affine constructions", 60, affine_constructions},
      {7, "biaffine 3q-6 construction", 60, biaffine_construction},
      {8, "characterization equivalence", 300, characterization_equivalence},
      {9, "W(q) constructions", 900, wq_constructions},
      {10, "GQ lower bound", 7200, gq_lower_bound},
      {11, "blocking suite", 600, blocking_suite},
      {12, "diagnostic inequalities", 60, diagnostic_inequalities},
      {13, "triad property", 600, triad_property},
  };
  return all;
}

double run_one(const Criterion& c, Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print(int id, const char* name, bool pass, double seconds, const std::vector<std::string>& failures) {
  std::printf("criterion %d: %s %s (%.2f s)\n", id, pass ? "PASS" : "FAIL", name, seconds);
  for (const std::string& f : failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "-v")
      verbose = true;
    else
      only.insert(std::atoi(argv[i]));
  }
  auto wanted = [&](int id) { return only.empty() || only.count(id); };

  bool all_pass = true;
  std::map<int, std::string> single_thread_reports;
  for (const Criterion& c : criteria()) {
    if (!wanted(c.id)) continue;
    Outcome o;
    const double t = run_one(c, o);
    single_thread_reports[c.id] = o.report.str();
    if (t > c.seconds) o.expect(false, "runtime " + std::to_string(t) + " s exceeds the " + std::to_string(c.seconds) + " s target");
    all_pass = all_pass && o.pass;
    print(c.id, c.name, o.pass, t, o.failures);
    if (verbose) {
      std::istringstream lines(single_thread_reports[c.id]);
      for (std::string line; std::getline(lines, line);) std::printf("      | %s\n", line.c_str());
    }
  }

  if (wanted(14)) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> failures;
    g_threads = 8;
    g_collect = false;
    for (const Criterion& c : criteria()) {
      if (c.id < 4 || c.id > 10) continue;
      if (!single_thread_reports.count(c.id)) {
        g_threads = 1;
        Outcome o;
        run_one(c, o);
        single_thread_reports[c.id] = o.report.str();
        g_threads = 8;
      }
      Outcome o;
      run_one(c, o);
      if (o.report.str() != single_thread_reports[c.id])
        failures.push_back("criterion " + std::to_string(c.id) + " report differs between 1 and 8 threads");
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_pass = all_pass && failures.empty();
    print(14, "determinism across thread counts", failures.empty(), t, failures);
  }
  return all_pass ? 0 : 1;
}
