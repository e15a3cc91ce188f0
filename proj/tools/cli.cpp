#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "mdim/blocking.hpp"
#include "mdim/bounds.hpp"
#include "mdim/characterizations.hpp"
#include "mdim/constructions.hpp"
#include "mdim/io.hpp"
#include "mdim/search.hpp"

namespace mdim {

namespace {

struct Failure : std::runtime_error {
  int code;
  Failure(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kExitError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure(kExitError, "cannot write " + path);
}

std::string vertex_name(Index v, std::size_t n_points) {
  return v < n_points ? "P" + std::to_string(v) : "L" + std::to_string(v - n_points);
}

std::string set_text(const VertexSet& s) {
  std::string out;
  for (Index p : s.points) out += (out.empty() ? "P" : " P") + std::to_string(p);
  for (Index l : s.lines) out += (out.empty() ? "L" : " L") + std::to_string(l);
  return out;
}

const char* yes(bool b) { return b ? "true" : "false"; }

struct Params {
  std::string family;
  std::uint32_t q = 0;
  std::uint32_t s = 0;
  std::string structure;
};

void add_structure_options(CLI::App* cmd, Params& p) {
  cmd->add_option("--structure", p.structure, "incidence v1 file");
  cmd->add_option("--family", p.family, "pg2|ag2|bg2|grid|pg3|wq|q4");
  cmd->add_option("--q", p.q, "order");
  cmd->add_option("--s", p.s, "grid parameter");
}

IncidenceFile build_family(const Params& p) {
  const std::string& f = p.family;
  if (f == "grid") {
    if (p.s < 1) throw Failure(kExitError, "grid needs --s >= 1");
    return to_file(grid_gq(p.s), "gq");
  }
  if (p.q < 2) throw Failure(kExitError, f + " needs --q >= 2");
  if (f == "pg2") return to_file(projective_plane(p.q));
  if (f == "ag2") return to_file(affine_plane(p.q));
  if (f == "bg2") return to_file(biaffine_plane(p.q));
  if (f == "pg3") return to_file(pg3(p.q).inc, "");
  if (f == "wq") return to_file(w_q(p.q).wq, "gq");
  if (f == "q4") return to_file(w_q(p.q).wq.dual(), "gq");
  throw Failure(kExitError, "unknown family '" + f + "'");
}

IncidenceFile load_structure(const Params& p) {
  if (!p.structure.empty()) return parse_incidence(read_file(p.structure));
  if (p.family.empty()) throw Failure(kExitError, "give --structure or --family");
  return build_family(p);
}

// Bounds-table row for a generated family, if any.
std::optional<BoundEntry> table_row(const Params& p) {
  if (!p.structure.empty()) return std::nullopt;
  if (p.family == "pg2") return bounds_for(Family::projective, p.q);
  if (p.family == "ag2") return bounds_for(Family::affine, p.q);
  if (p.family == "bg2") return bounds_for(Family::biaffine_desarguesian, p.q);
  if (p.family == "grid") return bounds_for(Family::grid, p.s);
  if (p.family == "wq" || p.family == "q4") return bounds_for(Family::wq, p.q);
  return std::nullopt;
}

SearchBudget make_budget(double seconds, std::uint64_t nodes, unsigned threads) {
  SearchBudget b;
  if (seconds > 0) b.seconds = seconds;
  if (nodes > 0) b.nodes = nodes;
  b.threads = std::max(1u, threads);
  return b;
}

int cmd_gen(const Params& p, const std::string& out_path, std::ostream& out) {
  if (!p.structure.empty()) throw Failure(kExitError, "gen takes --family, not --structure");
  const IncidenceFile f = build_family(p);
  const std::string text = serialize_incidence(f);
  if (out_path.empty()) {
    out << text;
    return kExitOk;
  }
  write_file(out_path, text);
  out << "family=" << p.family << "\n";
  out << "points=" << f.inc.num_points() << "\n";
  out << "lines=" << f.inc.num_lines() << "\n";
  out << "file=" << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const Params& p, const std::string& set_path, const std::string& mode, const std::string& semi,
               std::ostream& out) {
  const IncidenceFile f = load_structure(p);
  const VertexSet s = parse_set(read_file(set_path));
  s.validate(f.inc);
  const std::size_t np = f.inc.num_points();
  out << "size=" << s.size() << "\n";
  out << "points=" << s.points.size() << "\n";
  out << "lines=" << s.lines.size() << "\n";

  std::optional<bool> generic, conditions;
  if (mode == "generic" || mode == "both") {
    ResolveVerdict v;
    if (semi.empty())
      v = is_resolving(f.inc, s);
    else
      v = is_semi_resolving(f.inc, s, semi == "points" ? Side::points : Side::lines);
    generic = v.resolving;
    out << "generic=" << yes(v.resolving) << "\n";
    if (v.witness) out << "witness=" << vertex_name(v.witness->first, np) << "," << vertex_name(v.witness->second, np) << "\n";
  }
  if (mode == "conditions" || mode == "both") {
    if (!semi.empty()) throw Failure(kExitError, "--semi only applies to generic verification");
    const Plane plane = to_plane(f);
    const ConditionReport rep = verify_conditions(plane, s);
    for (const auto& c : rep.conditions) out << "condition." << c.name << "=" << (c.ok ? "ok" : "fail:" + c.witness) << "\n";
    conditions = rep.all();
    out << "conditions=" << yes(rep.all()) << "\n";
    if (plane.ctx.kind != PlaneKind::projective) {
      const Diagnostics d = diagnostics(plane, s);
      out << "u=" << d.uncovered_directions << "\n";
      if (plane.ctx.kind == PlaneKind::biaffine) out << "c=" << d.unblocked_classes << "\n";
      out << "delta=" << d.skew_lines << "\n";
    }
  }
  if (generic && conditions && *generic != *conditions) {
    out << "agreement=false\n";
    return kExitError;
  }
  if (generic && conditions) out << "agreement=true\n";
  const bool resolving = generic ? *generic : *conditions;
  out << (semi.empty() ? "resolving=" : "semi_resolving_" + semi + "=") << yes(resolving) << "\n";
  return resolving ? kExitOk : kExitNegative;
}

int cmd_construct(const std::string& name, const Params& p, int variant, std::uint32_t t_size, const std::string& set_out,
                  const std::string& structure_out, std::ostream& out) {
  VertexSet s;
  IncidenceFile structure;
  std::string verified_as = "resolving";
  std::optional<std::int64_t> size_bound;
  std::optional<bool> aligned;
  const std::int64_t q = p.q;

  if (name == "affine-basis" || name == "affine-lift") {
    const Plane af = affine_plane(p.q);
    s = affine_basis(af, variant);
    size_bound = 3 * q - 4;
    structure = to_file(af);
    if (name == "affine-lift") {
      s = lift_affine(af, s);
      size_bound = 4 * q - 4;
      structure = to_file(projective_plane(af.ctx.ambient));
    }
  } else if (name == "biaffine-3q6") {
    const Plane bg = biaffine_plane(p.q);
    s = biaffine_3q6(bg, t_size);
    size_bound = 3 * q - 6;
    structure = to_file(bg);
  } else if (name == "biaffine-bc") {
    const Plane af = affine_plane(p.q);
    const Plane bg = biaffine_plane(p.q);
    const MinBlocking mb = min_blocking(af.inc);
    const std::vector<Index> covering = polar_lines(bg, mb.witness);
    s = bc_resolving(bg, mb.witness, covering);
    size_bound = 2 * static_cast<std::int64_t>(mb.tau) - 2;
    structure = to_file(bg);
  } else if (name == "grid") {
    s = grid_resolving(p.s);
    size_bound = grid_phi(p.s);
    structure = to_file(grid_gq(p.s), "gq");
  } else if (name == "wq-points") {
    const SymplecticSpace w = w_q(p.q);
    s = wq_point_srs(w).set;
    size_bound = 4 * q;
    verified_as = "semi_resolving_points";
    structure = to_file(w.wq, "gq");
  } else if (name == "wq-lines") {
    const SymplecticSpace w = w_q(p.q);
    s = gq_line_srs_odd(w).set;
    size_bound = 5 * q - 4;
    verified_as = "semi_resolving_points_of_dual";
    structure = to_file(w.wq.dual(), "gq");
  } else if (name == "wq-full") {
    const SymplecticSpace w = w_q(p.q);
    const WqResolving r = wq_resolving(w);
    s = r.set;
    size_bound = q % 2 == 0 ? 8 * q : 8 * q - 1;
    if (q % 2 == 1) aligned = r.aligned;
    structure = to_file(w.wq, "gq");
  } else {
    throw Failure(kExitError, "unknown construction '" + name + "'");
  }

  out << "name=" << name << "\n";
  if (name == "grid")
    out << "s=" << p.s << "\n";
  else
    out << "q=" << p.q << "\n";
  out << "size=" << s.size() << "\n";
  out << "points=" << s.points.size() << "\n";
  out << "lines=" << s.lines.size() << "\n";
  if (size_bound) out << "size_bound=" << *size_bound << "\n";
  if (aligned) out << "aligned=" << yes(*aligned) << "\n";
  out << "verified=true\n";
  out << "verified_as=" << verified_as << "\n";
  out << "set=" << set_text(s) << "\n";
  if (!set_out.empty()) write_file(set_out, serialize_set(s));
  if (!structure_out.empty()) write_file(structure_out, serialize_incidence(structure));
  return kExitOk;
}

int cmd_mu(const Params& p, std::optional<std::uint32_t> max_k, const SearchBudget& budget, std::ostream& out) {
  const IncidenceFile f = load_structure(p);
  const VertexSet greedy = greedy_upper(f.inc);
  const std::uint32_t limit = max_k ? *max_k : static_cast<std::uint32_t>(greedy.size());
  const MuResult r = exact_mu(f.inc, limit, budget);
  out << "vertices=" << f.inc.num_vertices() << "\n";
  out << "greedy=" << greedy.size() << "\n";
  out << "nodes=" << r.nodes << "\n";
  switch (r.status) {
    case MuStatus::exact: {
      out << "status=exact\n";
      out << "mu=" << r.mu << "\n";
      out << "basis=" << set_text(r.basis) << "\n";
      if (const auto row = table_row(p)) {
        const CrossCheck c = crosscheck(*row, r.mu, Computed::value);
        out << "crosscheck=" << (c.ok ? "pass" : c.finding) << "\n";
      }
      return kExitOk;
    }
    case MuStatus::max_k_reached:
      out << "status=max_k_reached\n";
      out << "lower_bound=" << r.lower_bound << "\n";
      return kExitNegative;
    case MuStatus::budget_exhausted:
      out << "status=budget_exhausted\n";
      out << "lower_bound=" << r.lower_bound << "\n";
      return kExitBudget;
  }
  return kExitError;
}

int cmd_certify(const Params& p, std::uint32_t k, const SearchBudget& budget, std::ostream& out) {
  const IncidenceFile f = load_structure(p);
  const CertifyResult r = certify_lower(f.inc, k, budget);
  out << "k=" << k << "\n";
  out << "nodes=" << r.nodes << "\n";
  switch (r.status) {
    case CertifyStatus::no_resolving_set:
      out << "certified=true\n";
      out << "lower_bound=" << k + 1 << "\n";
      return kExitOk;
    case CertifyStatus::resolving_set_exists:
      out << "certified=false\n";
      out << "witness=" << set_text(*r.witness) << "\n";
      return kExitNegative;
    case CertifyStatus::budget_exhausted:
      out << "status=budget_exhausted\n";
      return kExitBudget;
  }
  return kExitError;
}

int cmd_bounds(const std::string& family, std::uint32_t n, std::optional<std::int64_t> computed, const std::string& kind,
               std::ostream& out) {
  const BoundEntry e = bounds_for(family_from_string(family), n);
  out << "family=" << to_string(e.family) << "\n";
  out << "n=" << e.n << "\n";
  if (e.lower) out << "lower=" << *e.lower << "\n";
  if (e.upper) out << "upper=" << *e.upper << "\n";
  if (e.exact) out << "exact=" << *e.exact << "\n";
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const BoundTerm& t = e.terms[i];
    const char* k = t.kind == BoundTerm::lower ? "lower" : t.kind == BoundTerm::upper ? "upper" : "exact";
    out << "term." << i << "=" << k << " " << t.formula << "=" << t.value << " if " << t.condition << "; " << t.provenance
        << "\n";
  }
  if (!computed) return kExitOk;
  Computed c = Computed::value;
  if (kind == "upper") c = Computed::upper_bound;
  else if (kind == "lower") c = Computed::lower_bound;
  else if (kind != "value") throw Failure(kExitError, "--as must be value|upper|lower");
  const CrossCheck r = crosscheck(e, *computed, c);
  out << "crosscheck=" << (r.ok ? "pass" : r.finding) << "\n";
  return r.ok ? kExitOk : kExitNegative;
}

std::vector<Index> load_points(const std::string& path, const Incidence& inc) {
  const VertexSet s = parse_set(read_file(path));
  if (!s.lines.empty()) throw Failure(kExitError, "blocking commands take point sets only");
  s.validate(inc);
  return s.points;
}

int cmd_blocking(const std::string& action, const Params& p, const std::string& set_path, std::uint32_t k,
                 std::ostream& out) {
  const IncidenceFile f = load_structure(p);
  if (action == "tau") {
    const MinBlocking mb = min_blocking(f.inc);
    out << "tau=" << mb.tau << "\n";
    out << "witness=" << set_text(VertexSet{mb.witness, {}}) << "\n";
    return kExitOk;
  }
  if (set_path.empty()) throw Failure(kExitError, "blocking " + action + " needs --set");
  const std::vector<Index> b = load_points(set_path, f.inc);
  const BlockingReport rep = analyze_blocking(f.inc, b);
  out << "size=" << b.size() << "\n";
  out << "blocking=" << yes(rep.is_blocking) << "\n";
  out << "delta=" << rep.delta << "\n";
  if (action == "extend") {
    const ExtendResult r = k_extendable(f.inc, b, k);
    out << "k=" << k << "\n";
    if (r.status == ExtendStatus::budget_exhausted) {
      out << "status=budget_exhausted\n";
      return kExitBudget;
    }
    out << "extendable=" << yes(r.status == ExtendStatus::extendable) << "\n";
    if (r.status == ExtendStatus::extendable) out << "extender=" << set_text(VertexSet{r.extender, {}}) << "\n";
    return r.status == ExtendStatus::extendable ? kExitOk : kExitNegative;
  }
  InequalityCheck c;
  if (action == "metsch")
    c = metsch_check(f.inc, b);
  else if (action == "tangents")
    c = tangent_bound_check(f.inc, b);
  else
    throw Failure(kExitError, "unknown blocking action '" + action + "'");
  out << "holds=" << yes(c.ok) << "\n";
  if (!c.ok) out << "violation=" << c.violation << "\n";
  return c.ok ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric dimension of finite incidence geometries"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads for exact search");

  Params p;
  std::string out_path, set_path, mode = "generic", semi, name, set_out, structure_out, as = "value", action;
  int variant = 1;
  std::uint32_t t_size = 1, k = 0;
  std::optional<std::uint32_t> max_k;
  std::optional<std::int64_t> computed;
  double seconds = 0;
  std::uint64_t nodes = 0;

  auto* gen = app.add_subcommand("gen", "write an incidence v1 file");
  add_structure_options(gen, p);
  gen->add_option("--out", out_path, "output path (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "check whether a set resolves a structure");
  add_structure_options(verify, p);
  verify->add_option("--set", set_path, "set v1 file")->required();
  verify->add_option("--mode", mode, "generic|conditions|both")->check(CLI::IsMember({"generic", "conditions", "both"}));
  verify->add_option("--semi", semi, "only resolve one side: points|lines")->check(CLI::IsMember({"points", "lines"}));

  auto* construct = app.add_subcommand("construct", "build and verify an explicit set");
  construct->add_option("--name", name, "affine-basis|affine-lift|biaffine-3q6|biaffine-bc|grid|wq-points|wq-lines|wq-full")
      ->required();
  construct->add_option("--q", p.q, "order");
  construct->add_option("--s", p.s, "grid parameter");
  construct->add_option("--variant", variant, "affine basis variant 1..4");
  construct->add_option("--t", t_size, "|T| for biaffine-3q6");
  construct->add_option("--out", set_out, "write the set as set v1");
  construct->add_option("--structure-out", structure_out, "write the structure as incidence v1");

  auto* mu = app.add_subcommand("mu", "exact metric dimension");
  add_structure_options(mu, p);
  mu->add_option("--max-k", max_k, "largest size tried (default: greedy upper bound)");
  mu->add_option("--seconds", seconds, "time budget");
  mu->add_option("--nodes", nodes, "node budget");

  auto* certify = app.add_subcommand("certify", "certify that no k-set resolves");
  add_structure_options(certify, p);
  certify->add_option("--k", k, "set size")->required();
  certify->add_option("--seconds", seconds, "time budget");
  certify->add_option("--nodes", nodes, "node budget");

  auto* bounds = app.add_subcommand("bounds", "bounds table lookup");
  bounds->add_option("--family", p.family, "projective|affine|biaffine-general|biaffine-desarguesian|grid|gq-general|wq")
      ->required();
  bounds->add_option("--q", p.q, "order");
  bounds->add_option("--s", p.s, "grid parameter");
  bounds->add_option("--computed", computed, "value to cross-check");
  bounds->add_option("--as", as, "value|upper|lower");

  auto* blocking = app.add_subcommand("blocking", "blocking set tools");
  blocking->add_option("action", action, "tau|extend|metsch|tangents")
      ->required()
      ->check(CLI::IsMember({"tau", "extend", "metsch", "tangents"}));
  add_structure_options(blocking, p);
  blocking->add_option("--set", set_path, "set v1 file with points only");
  blocking->add_option("--k", k, "points to add (extend)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const SearchBudget budget = make_budget(seconds, nodes, threads);
    if (*gen) return cmd_gen(p, out_path, out);
    if (*verify) return cmd_verify(p, set_path, mode, semi, out);
    if (*construct) return cmd_construct(name, p, variant, t_size, set_out, structure_out, out);
    if (*mu) return cmd_mu(p, max_k, budget, out);
    if (*certify) return cmd_certify(p, k, budget, out);
    if (*bounds) return cmd_bounds(p.family, p.family == "grid" ? p.s : p.q, computed, as, out);
    if (*blocking) return cmd_blocking(action, p, set_path, k, out);
  } catch (const Failure& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace mdim
