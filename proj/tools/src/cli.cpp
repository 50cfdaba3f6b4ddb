#include "cli.hpp"

#include "checks.hpp"
#include "formats.hpp"

#include "mds/algtop.hpp"
#include "mds/bisim.hpp"
#include "mds/error.hpp"
#include "mds/gcomplex.hpp"
#include "mds/natsys.hpp"
#include "mds/pathspace.hpp"
#include "mds/sample.hpp"
#include "mds/text_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace mds::cli {

namespace {

struct Globals {
  std::string val = "pi0";
  std::size_t cap = kDefaultCap;
  unsigned jobs = 1;
  std::string out;
};

struct Result {
  std::string text;
  int code = 0;
};

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

GlobularComplex load_decl(const std::string& file) {
  const std::string text = read_file(file);
  if (ends_with(file, ".pcx")) return import_precubical(parse_pcx(text, file));
  return parse_gcx(text, file);
}

Complex load(const std::string& file) { return Complex::build(load_decl(file)); }

NatSysOptions natsys_options(const Globals& g) {
  NatSysOptions o;
  o.cap = g.cap;
  o.jobs = g.jobs;
  return o;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct SplitSpec {
  std::string edge;
  std::string cell;
  int chord = 1;

  bool given() const { return !edge.empty() || !cell.empty(); }
  std::string text() const { return edge.empty() ? "cell " + cell + " chord " + std::to_string(chord) : "edge " + edge; }
  Subdivision apply(const GlobularComplex& x) const {
    if (!edge.empty() && !cell.empty()) throw Error(ErrorKind::BadChordSpec, "give either --edge or --cell");
    if (!edge.empty()) return subdivide_edge(x, edge);
    if (!cell.empty()) return subdivide_2cell(x, cell, chord);
    throw Error(ErrorKind::BadChordSpec, "missing --edge or --cell");
  }
};

std::string triples_text(const Bisimulation& r, const Diagram& f, const Diagram& g) {
  std::string out;
  for (const auto& t : r.triples)
    out += "triple " + f.index.label(t.i) + " ~ " + g.index.label(t.j) + " via " + t.eta.text() + "\n";
  return out;
}

std::string open_text(const OpenReport& r) {
  if (r.open) return "OPEN\n";
  std::string t = r.text();
  return "NOT OPEN" + t.substr(t.find('\n')) + "\n";
}

// ---------------------------------------------------------------- commands

Result cmd_paths(const Globals& gl, const std::string& file, const std::string& a, const std::string& b, bool cubes,
                 int max_dim) {
  Complex x = load(file);
  PathComplex p = path_complex(x, x.state(a), x.state(b), gl.cap);
  if (max_dim >= 0) p = p.truncated(max_dim);
  std::string out = "paths " + a + " -> " + b + "\n";
  for (int k = 0; k <= std::max(p.dimension(), 0); ++k) out += "cubes" + std::to_string(k) + " " + std::to_string(p.count(k)) + "\n";
  auto bad = check_precubical(p);
  out += "precubical " + (bad ? "violated: " + *bad : std::string("ok")) + "\n";
  for (int k = 0; k <= std::max(p.dimension(), 0) + 1; ++k) out += homology_line(p, k, homology(p, k)) + "\n";
  out += "components " + std::to_string(pi0(p).count) + "\n";
  if (cubes) out += p.text();
  return {out, 0};
}

Result cmd_trace_space(const Globals& gl, const std::vector<std::string>& args, const std::string& path_file) {
  const Valuation val = Valuation::parse(gl.val);
  Complex x = load(args.at(0));
  if (!path_file.empty()) {
    DirectedPathPL g = parse_path(read_file(path_file), x, path_file);
    auto r = nt_value_of_path(x, g, val, gl.cap);
    std::string out = "trace " + chain_text(x, r.trace.chain) + "\n";
    out += "by-carriers " + r.by_carriers.text() + "\n";
    out += "by-trace " + r.by_trace.text() + "\n";
    out += "agree " + yes_no(r.agree) + "\n";
    return {out, r.agree ? 0 : 1};
  }
  if (args.size() != 3) throw Error(ErrorKind::ParseError, "trace-space needs <complex> <cell> <cell> or --path");
  const CellId c = x.id(args[1]);
  const CellId d = x.id(args[2]);
  TraceSpaceValue v = trace_space(x, c, d, gl.cap);
  std::string out = "trace-space " + args[1] + " -> " + args[2] + "\n";
  out += "base " + x.name(exit_state(x, c)) + " -> " + x.name(entry_state(x, d)) + "\n";
  for (int k = 0; k <= std::max(v.base.dimension(), 0); ++k)
    out += "cubes" + std::to_string(k) + " " + std::to_string(v.base.count(k)) + "\n";
  out += "extra-point " + yes_no(v.extra_point) + "\n";
  out += "value " + valuate(v, val).space.text() + "\n";
  return {out, 0};
}

Result cmd_natsys(const Globals& gl, const std::string& file) {
  Complex x = load(file);
  auto ns = natural_system(x, Valuation::parse(gl.val), natsys_options(gl));
  const auto& idx = ns.diagram.index;
  std::string out = "natsys " + gl.val + "\n";
  out += "objects " + std::to_string(idx.size()) + "\n";
  out += "generators " + std::to_string(idx.generators().size()) + "\n";
  out += "morphisms " + std::to_string(idx.morphism_count()) + "\n";
  return {out + ns.diagram.text(), 0};
}

Result cmd_bisim(const Globals& gl, const std::string& fa, const std::string& fb) {
  const Valuation val = Valuation::parse(gl.val);
  Complex a = load(fa);
  Complex b = load(fb);
  auto na = natural_system(a, val, natsys_options(gl));
  auto nb = natural_system(b, val, natsys_options(gl));
  ValueAdapter adapter(val);
  BisimOptions bo;
  bo.jobs = gl.jobs;
  auto res = bisimilar(na.diagram, nb.diagram, adapter, bo);
  std::string out = "BISIMILAR " + to_string(res.verdict) + "\n";
  out += "exact " + yes_no(res.exact) + "\n";
  int code = res.verdict == Verdict::Yes ? 0 : res.verdict == Verdict::No ? 1 : 2;
  if (res.verdict == Verdict::Yes) {
    auto v = verify_bisimulation(res.relation, na.diagram, nb.diagram, adapter);
    out += "certificate " + (v.ok ? std::string("verified") : "rejected: " + v.clause) + "\n";
    out += "triples " + std::to_string(res.relation.triples.size()) + "\n";
    out += triples_text(res.relation, na.diagram, nb.diagram);
    if (!v.ok) code = 2;
  } else {
    for (const auto& line : res.trace) out += line + "\n";
  }
  return {out, code};
}

Result cmd_check_open(const Globals& gl, const std::vector<std::string>& args, bool dt, const SplitSpec& split,
                      bool strict) {
  const Valuation val = Valuation::parse(gl.val);
  ValueAdapter adapter(val);
  auto report = [&](const std::string& what, const DiagramMap& m, const Diagram& src, const Diagram& dst) {
    auto r = strict ? check_open(m, src, dst) : check_open_up_to_homotopy(m, src, dst, adapter);
    std::string out = "check-open " + what + " (" + val.text() + (strict ? ", strict" : ", up to homotopy") + ")\n";
    return Result{out + open_text(r), r.open ? 0 : 1};
  };
  if (dt || split.given()) {
    if (args.size() != 1) throw Error(ErrorKind::ParseError, "expected a single complex");
    Complex x = load(args[0]);
    if (dt) {
      auto comp = dt_comparison(x, val, natsys_options(gl));
      return report("comparison " + args[0], comp.map, comp.representatives.diagram, comp.target.diagram);
    }
    auto sub = split.apply(x.decl());
    Complex y = Complex::build(sub.complex);
    auto fine = natural_system(y, val, natsys_options(gl));
    auto coarse = natural_system(x, val, natsys_options(gl));
    return report("refinement " + args[0] + " " + split.text(), refinement_map(sub, fine, coarse), fine.diagram,
                  coarse.diagram);
  }
  if (args.size() != 3) throw Error(ErrorKind::ParseError, "check-open needs <map.cmap> <source> <target>, --dt or a split");
  Complex a = load(args[1]);
  Complex b = load(args[2]);
  CellularMap cm = parse_cmap(read_file(args[0]), a, b, args[0]);
  auto na = natural_system(a, val, natsys_options(gl));
  auto nb = natural_system(b, val, natsys_options(gl));
  return report(args[0], crush_induced_map(cm, na, nb), na.diagram, nb.diagram);
}

Result cmd_span(const Globals& gl, const std::string& file, bool dt, const SplitSpec& split) {
  const Valuation val = Valuation::parse(gl.val);
  ValueAdapter adapter(val);
  Complex x = load(file);
  auto emit = [&](const std::string& what, const Bisimulation& r, const Diagram& f, const Diagram& g) {
    auto v = verify_bisimulation(r, f, g, adapter);
    std::string out = "SPAN " + what + " (" + val.text() + ")\n";
    out += "legs open yes\n";
    out += "certificate " + (v.ok ? std::string("verified") : "rejected: " + v.clause) + "\n";
    out += "triples " + std::to_string(r.triples.size()) + "\n";
    return Result{out + triples_text(r, f, g), v.ok ? 0 : 1};
  };
  if (dt) {
    auto comp = dt_comparison(x, val, natsys_options(gl));
    const auto& reps = comp.representatives.diagram;
    auto r = span_to_bisimulation(identity_map(reps), comp.map, reps, reps, comp.target.diagram, adapter);
    return emit("comparison " + file, r, reps, comp.target.diagram);
  }
  auto sub = split.apply(x.decl());
  Complex y = Complex::build(sub.complex);
  auto fine = natural_system(y, val, natsys_options(gl));
  auto coarse = natural_system(x, val, natsys_options(gl));
  auto p = refinement_map(sub, fine, coarse);
  auto r = span_to_bisimulation(p, identity_map(fine.diagram), fine.diagram, coarse.diagram, fine.diagram, adapter);
  return emit("refinement " + file + " " + split.text(), r, coarse.diagram, fine.diagram);
}

std::string breakpoints_text(const std::vector<Rational>& ts) {
  std::string out;
  for (const auto& t : ts) out += (out.empty() ? "" : " ") + to_string(t);
  return out;
}

std::string strip_newline(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

Result cmd_dt(const Globals& gl, const std::string& file, const std::string& path_file, std::size_t sample,
              std::uint64_t seed) {
  Complex x = load(file);
  if (!path_file.empty()) {
    DirectedPathPL g = parse_path(read_file(path_file), x, path_file);
    auto dt = discrete_trace(x, g);
    auto bad = check_discrete_trace(x, g, dt);
    std::string out = "trace " + chain_text(x, dt.chain) + "\n";
    out += "breakpoints " + breakpoints_text(dt.breakpoints) + "\n";
    out += "conditions " + (bad ? "violated: " + *bad : std::string("ok")) + "\n";
    return {out, bad ? 1 : 0};
  }
  if (sample == 0) throw Error(ErrorKind::ParseError, "dt needs a path file or --sample <n>");
  const Valuation val = Valuation::parse(gl.val);
  Sampler rng(seed);
  std::size_t cond_ok = 0, routes_ok = 0, regular_ok = 0, exact_ok = 0;
  std::string out;
  for (std::size_t i = 0; i < sample; ++i) {
    DirectedPathPL g = rng.directed_path(x);
    auto dt = discrete_trace(x, g);
    auto bad = check_discrete_trace(x, g, dt);
    auto r = nt_value_of_path(x, g, val, gl.cap);

    DirectedPathPL e = g;
    const Rational n(static_cast<long long>(e.word.size()));
    e.clock = rng.surjection(1, n);
    auto nat = naturalize(x, e);
    const bool regular = is_regular(MoorePath(1, {nat.natgl.clock}));
    const bool exact = compose_pl(compose_pl(nat.phi.map(), mu(n)), nat.natgl.clock) == e.clock;

    cond_ok += !bad;
    routes_ok += r.agree;
    regular_ok += regular;
    exact_ok += exact;
    out += "sample " + std::to_string(i) + " : " + strip_newline(write_path(x, g)) + "\n";
    out += "  trace " + chain_text(x, dt.chain) + " breakpoints " + breakpoints_text(dt.breakpoints) + "\n";
    out += "  conditions " + (bad ? "violated: " + *bad : std::string("ok")) + "\n";
    out += "  value " + r.by_carriers.text() + " | " + r.by_trace.text() + " agree " + yes_no(r.agree) + "\n";
    out += "  naturalized regular " + yes_no(regular) + " exact " + yes_no(exact) + "\n";
  }
  auto frac = [&](std::size_t k) { return std::to_string(k) + "/" + std::to_string(sample); };
  out += "conditions " + frac(cond_ok) + "\n";
  out += "routes " + frac(routes_ok) + "\n";
  out += "regular " + frac(regular_ok) + "\n";
  out += "decomposition " + frac(exact_ok) + "\n";
  const bool all = cond_ok == sample && routes_ok == sample && regular_ok == sample && exact_ok == sample;
  return {out, all ? 0 : 1};
}

Result cmd_naturalize(const std::string& file, const std::string& path_file) {
  Complex x = load(file);
  DirectedPathPL g = parse_path(read_file(path_file), x, path_file);
  auto nat = naturalize(x, g);
  const Rational n(static_cast<long long>(g.word.size()));
  const bool regular = is_regular(MoorePath(1, {nat.natgl.clock}));
  const bool exact = compose_pl(compose_pl(nat.phi.map(), mu(n)), nat.natgl.clock) == g.clock;
  std::string out = "natgl " + write_path(x, nat.natgl);
  out += "phi " + points_text(nat.phi.map()) + "\n";
  out += "regular " + yes_no(regular) + "\n";
  out += "decomposition " + yes_no(exact) + "\n";
  return {out, regular && exact ? 0 : 1};
}

Result cmd_renormalize(const std::string& file, std::size_t random, std::uint64_t seed) {
  if (file.empty()) {
    if (random == 0) throw Error(ErrorKind::ParseError, "renormalize needs a word file or --random <n>");
    auto s = check_renormalize(seed, random);
    return {s.text() + "\n", s.ok() ? 0 : 1};
  }
  auto wf = parse_word_file(read_file(file), file);
  auto r = renormalize(wf.word, wf.phi);
  auto bad = renormalize_mismatch(wf.word, wf.phi, r);
  std::string out = "range " + std::to_string(r.first) + " " + std::to_string(r.last) + "\n";
  for (const auto& p : r.word) out += piece_text(p) + "\n";
  out += "clock " + points_text(r.clock.map()) + "\n";
  out += "pieces " + std::to_string(r.pieces.size()) + "\n";
  for (const auto& p : r.pieces) out += "  " + piece_text(p) + "\n";
  out += "reassembly " + (bad.empty() ? std::string("exact") : "differs: " + bad) + "\n";
  return {out, bad.empty() ? 0 : 1};
}

Result cmd_subdivide(const std::string& file, const SplitSpec& split, bool refinement) {
  Complex x = load(file);
  auto sub = split.apply(x.decl());
  Complex::build(sub.complex);
  std::string out = write_gcx(sub.complex);
  if (refinement)
    for (const auto& [fine, coarse] : sub.refinement) out += "# refines " + fine + " -> " + coarse + "\n";
  return {out, 0};
}

Result cmd_import_pcx(const std::string& file) {
  auto decl = import_precubical(parse_pcx(read_file(file), file));
  Complex::build(decl);
  return {write_gcx(decl), 0};
}

Result cmd_laws(std::size_t count, std::uint64_t seed) {
  const CheckSummary all[] = {check_interchange(seed, count), check_scaling(seed + 1, count),
                              check_normalized(seed + 2, count)};
  std::string out;
  bool ok = true;
  for (const auto& s : all) {
    out += s.text() + "\n";
    ok = ok && s.ok();
  }
  return {out, ok ? 0 : 1};
}

Result cmd_snf(const std::string& file, std::size_t random, std::uint64_t seed, std::size_t size) {
  if (file.empty()) {
    if (random == 0) throw Error(ErrorKind::ParseError, "snf needs a matrix file or --random <n>");
    auto s = check_smith(seed, random, size);
    return {s.text() + "\n", s.ok() ? 0 : 1};
  }
  IntMatrix m = parse_matrix(read_file(file), file);
  auto s = smith_normal_form(m);
  auto bad = smith_mismatch(m, s);
  std::string out = "rank " + std::to_string(s.rank) + "\ndiagonal";
  for (const auto& d : s.diagonal()) out += " " + d.str();
  out += "\nD\n" + s.d.text() + "U\n" + s.u.text() + "V\n" + s.v.text();
  out += "check " + (bad.empty() ? std::string("ok") : bad) + "\n";
  return {out, bad.empty() ? 0 : 1};
}

void emit(const Globals& gl, const std::string& text, std::ostream& out) {
  if (gl.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(gl.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + gl.out);
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace spaces, natural systems and bisimulations of globular complexes"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--val", gl.val, "Valuation: pi0 or hom:<k>");
  app.add_option("--cap", gl.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--jobs", gl.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", gl.out, "Write the report to a file");

  std::vector<std::string> files;
  std::string a, b, path_file, file;
  bool cubes = false, dt = false, strict = false, refinement = false;
  int max_dim = -1;
  std::size_t count = 100, size = 6;
  std::uint64_t seed = 1;
  SplitSpec split;

  auto sub = [&](const char* name, const char* desc) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto split_options = [&](CLI::App* s) {
    s->add_option("--edge", split.edge, "Edge to split");
    s->add_option("--cell", split.cell, "2-cell to split along a chord");
    s->add_option("--chord", split.chord, "Chord length for --cell");
  };

  auto* paths = sub("paths", "Path complex between two states with homology");
  paths->add_option("complex", file, "GCX or PCX file")->required();
  paths->add_option("alpha", a)->required();
  paths->add_option("beta", b)->required();
  paths->add_flag("--cubes", cubes, "List every cube with its faces");
  paths->add_option("--max-dim", max_dim, "Drop cubes above this degree");

  auto* tspace = sub("trace-space", "Trace space between two cells, or the value at a path");
  tspace->add_option("args", files, "<complex> <cell> <cell>")->required()->expected(1, 3);
  tspace->add_option("--path", path_file, "Directed path file");

  auto* natsys = sub("natsys", "Natural system of discrete traces");
  natsys->add_option("complex", files)->required()->expected(1);

  auto* bisim = sub("bisim", "Bisimilarity of the natural systems of two complexes");
  bisim->add_option("complexes", files)->required()->expected(2);

  auto* copen = sub("check-open", "Openness of a map of natural systems");
  copen->add_option("args", files, "<map.cmap> <source> <target>, or <complex> with --dt / a split")
      ->required()
      ->expected(1, 3);
  copen->add_flag("--dt", dt, "Comparison map of the center system onto the discrete one");
  copen->add_flag("--strict", strict, "Require cube bijections instead of isomorphic values");
  split_options(copen);

  auto* span = sub("span", "Bisimulation from a span of open maps");
  span->add_option("complex", files)->required()->expected(1);
  span->add_flag("--dt", dt, "Span through the comparison map");
  split_options(span);

  auto* dtc = sub("dt", "Discrete trace of a directed path");
  dtc->add_option("complex", file)->required();
  dtc->add_option("path", path_file, "Directed path file");
  dtc->add_option("--sample", count, "Check this many random paths instead");
  dtc->add_option("--seed", seed);

  auto* nat = sub("naturalize", "Unit-speed normal form of an execution path");
  nat->add_option("complex", file)->required();
  nat->add_option("path", path_file)->required();

  auto* renorm = sub("renormalize", "Normal form of a word read through a clock");
  renorm->add_option("word", file, "Word file");
  renorm->add_option("--random", count, "Check this many random words instead");
  renorm->add_option("--seed", seed);

  auto* subdiv = sub("subdivide", "Split an edge or a 2-cell; prints GCX");
  subdiv->add_option("complex", files)->required()->expected(1);
  subdiv->add_flag("--refinement", refinement, "Append the fine-to-coarse cell map as comments");
  split_options(subdiv);

  auto* impcx = sub("import-pcx", "Convert a precubical set to GCX");
  impcx->add_option("pcx", files)->required()->expected(1);

  auto* laws = sub("laws", "Random exact checks of the Moore path algebra");
  laws->add_option("--count", count);
  laws->add_option("--seed", seed);

  std::string matrix_file;
  auto* snf = sub("snf", "Smith normal form of an integer matrix");
  snf->add_option("matrix", matrix_file, "Matrix file");
  snf->add_option("--random", count, "Check this many random matrices instead");
  snf->add_option("--size", size)->check(CLI::PositiveNumber);
  snf->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: Usage: " << e.what() << "\n";
    return 2;
  }

  try {
    Result r;
    if (paths->parsed()) r = cmd_paths(gl, file, a, b, cubes, max_dim);
    else if (tspace->parsed()) r = cmd_trace_space(gl, files, path_file);
    else if (natsys->parsed()) r = cmd_natsys(gl, files[0]);
    else if (bisim->parsed()) r = cmd_bisim(gl, files[0], files[1]);
    else if (copen->parsed()) r = cmd_check_open(gl, files, dt, split, strict);
    else if (span->parsed()) {
      if (!dt && !split.given()) throw Error(ErrorKind::ParseError, "span needs --dt or a split");
      r = cmd_span(gl, files[0], dt, split);
    } else if (dtc->parsed()) r = cmd_dt(gl, file, path_file, dtc->count("--sample") ? count : 0, seed);
    else if (nat->parsed()) r = cmd_naturalize(file, path_file);
    else if (renorm->parsed()) r = cmd_renormalize(file, renorm->count("--random") ? count : 0, seed);
    else if (subdiv->parsed()) r = cmd_subdivide(files[0], split, refinement);
    else if (impcx->parsed()) r = cmd_import_pcx(files[0]);
    else if (laws->parsed()) r = cmd_laws(count, seed);
    else if (snf->parsed()) r = cmd_snf(matrix_file, snf->count("--random") ? count : 0, seed, size);
    emit(gl, r.text, out);
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mds::cli
