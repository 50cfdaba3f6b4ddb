#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"

#include "mds/bisim.hpp"
#include "mds/error.hpp"
#include "mds/natsys.hpp"

#include <functional>
#include <numeric>

using namespace mds;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

ValuedSpace set_of(std::size_t n) {
  ValuedSpace s;
  s.components = n;
  return s;
}

ValuedSpace graded(std::vector<FgAbGroup> groups) {
  ValuedSpace s;
  s.homology = std::move(groups);
  return s;
}

ValuedMap pi0_map(std::vector<std::size_t> v) {
  ValuedMap m;
  m.on_components = std::move(v);
  return m;
}

Diagram one_object(std::size_t n) {
  Diagram d;
  d.index.add_object("*");
  d.values.push_back(set_of(n));
  d.complete();
  return d;
}

// Random thin diagram of finite sets: objects 0..n-1, generators only go up.
Diagram random_diagram(gen::Rng& rng, int n) {
  Diagram d;
  for (int i = 0; i < n; ++i) {
    d.index.add_object("o" + std::to_string(i));
    d.values.push_back(set_of(static_cast<std::size_t>(rng.uniform(1, 3))));
  }
  // a tree of generators keeps every composite path unique
  for (int i = 1; i < n; ++i) {
    const auto from = static_cast<std::size_t>(rng.uniform(0, i - 1));
    d.index.add_generator(from, static_cast<std::size_t>(i), "g" + std::to_string(i));
    std::vector<std::size_t> m;
    for (std::size_t c = 0; c < d.values[from].components; ++c)
      m.push_back(static_cast<std::size_t>(rng.uniform(0, static_cast<int>(d.values[i].components) - 1)));
    d.generator_maps.push_back(pi0_map(m));
  }
  d.complete();
  return d;
}

// Same diagram with the elements of every value renamed by a permutation.
Diagram relabelled(gen::Rng& rng, const Diagram& d) {
  std::vector<std::vector<std::size_t>> perm;
  for (const auto& v : d.values) {
    std::vector<std::size_t> p(v.components);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t k = p.size(); k > 1; --k) std::swap(p[k - 1], p[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(k) - 1))]);
    perm.push_back(p);
  }
  Diagram out;
  for (const auto& l : d.index.labels()) out.index.add_object(l);
  out.values = d.values;
  for (std::size_t g = 0; g < d.index.generators().size(); ++g) {
    const auto& gen = d.index.generators()[g];
    out.index.add_generator(gen.from, gen.to, gen.label);
    std::vector<std::size_t> m(perm[gen.from].size());
    for (std::size_t c = 0; c < m.size(); ++c) m[perm[gen.from][c]] = perm[gen.to][d.generator_maps[g].on_components[c]];
    out.generator_maps.push_back(pi0_map(m));
  }
  out.complete();
  return out;
}

Bisimulation diagonal(const Diagram& d) {
  Bisimulation r;
  for (std::size_t i = 0; i < d.index.size(); ++i) r.triples.push_back({i, identity(d.values[i]), i});
  return r;
}

const std::vector<Valuation>& valuations() {
  static const std::vector<Valuation> v = {Valuation::pi0(), Valuation::homology(1)};
  return v;
}

struct Split {
  std::string file;
  std::function<Subdivision(const GlobularComplex&)> split;
};

const std::vector<Split>& splits() {
  static const std::vector<Split> s = {
      {"edge.gcx", [](const GlobularComplex& g) { return subdivide_edge(g, "d"); }},
      {"square.gcx", [](const GlobularComplex& g) { return subdivide_edge(g, "b"); }},
      {"square.gcx", [](const GlobularComplex& g) { return subdivide_2cell(g, "q", 2); }},
      {"fig_a.gcx", [](const GlobularComplex& g) { return subdivide_2cell(g, "c2", 1); }},
      {"fig_b.gcx", [](const GlobularComplex& g) { return subdivide_edge(g, "d4"); }},
      {"twocells.gcx", [](const GlobularComplex& g) { return subdivide_2cell(g, "s1", 1); }},
  };
  return s;
}

}  // namespace

TEST_CASE("finite set adapter") {
  ValueAdapter a(Valuation::pi0());
  CHECK(a.iso_candidates(set_of(3), set_of(3)).isos.size() == 6);
  CHECK_FALSE(a.iso_candidates(set_of(3), set_of(3)).incomplete);
  CHECK(a.iso_candidates(set_of(1), set_of(2)).isos.empty());
  CHECK(a.is_iso(pi0_map({1, 0}), set_of(2), set_of(2)));
  CHECK_FALSE(a.is_iso(pi0_map({0, 0}), set_of(2), set_of(2)));
  CHECK(*a.inverse(pi0_map({2, 0, 1}), set_of(3), set_of(3)) == pi0_map({1, 2, 0}));
  CHECK_FALSE(a.inverse(pi0_map({0, 0}), set_of(2), set_of(2)).has_value());
  CHECK(kind_of([] { ValueAdapter(Valuation::pi0(), 10).iso_candidates(set_of(4), set_of(4)); }) ==
        ErrorKind::CapExceeded);
}

TEST_CASE("graded group adapter") {
  ValueAdapter a(Valuation::homology(1));
  const FgAbGroup z1{1, {}}, z2{2, {}}, zero{};
  auto c = a.iso_candidates(graded({z1, zero}), graded({z1, zero}));
  CHECK(c.isos.size() == 2);
  CHECK_FALSE(c.incomplete);
  auto d = a.iso_candidates(graded({z2, z1}), graded({z2, z1}));
  CHECK(d.isos.size() == 16);
  CHECK(d.incomplete);
  CHECK(a.iso_candidates(graded({z1, zero}), graded({z2, zero})).isos.empty());
  for (const auto& m : d.isos) {
    CHECK(a.is_iso(m, graded({z2, z1}), graded({z2, z1})));
    auto inv = a.inverse(m, graded({z2, z1}), graded({z2, z1}));
    REQUIRE(inv.has_value());
    CHECK(a.compose(*inv, m, graded({z2, z1})) == identity(graded({z2, z1})));
  }

  ValuedMap shear;
  shear.on_homology = {IntMatrix{{1, 3}, {0, 1}}};
  auto s2 = graded({z2});
  CHECK(a.is_iso(shear, s2, s2));
  CHECK(*a.inverse(shear, s2, s2) == ValuedMap{{}, {IntMatrix{{1, -3}, {0, 1}}}});
  ValuedMap doubling;
  doubling.on_homology = {IntMatrix{{2}}};
  CHECK_FALSE(a.is_iso(doubling, graded({z1}), graded({z1})));

  const FgAbGroup tor{1, {Integer(3)}};
  ValuedMap t;
  t.on_homology = {IntMatrix{{-1, 0}, {1, 2}}};
  CHECK(a.is_iso(t, graded({tor}), graded({tor})));
  auto tinv = a.inverse(t, graded({tor}), graded({tor}));
  REQUIRE(tinv.has_value());
  CHECK(a.compose(t, *tinv, graded({tor})) == identity(graded({tor})));
  t.on_homology = {IntMatrix{{1, 0}, {0, 0}}};
  CHECK_FALSE(a.is_iso(t, graded({tor}), graded({tor})));
  CHECK(a.iso_candidates(graded({tor}), graded({tor})).incomplete);
}

TEST_CASE("open maps") {
  for (const auto& file : fx::gallery()) {
    CAPTURE(file);
    auto x = fx::load(file);
    for (const auto& val : valuations()) {
      ValueAdapter a(val);
      auto ns = natural_system(x, val);
      auto id = identity_map(ns.diagram);
      CHECK(check_open(id, ns.diagram, ns.diagram).open);
      CHECK(check_open_up_to_homotopy(id, ns.diagram, ns.diagram, a).open);

      auto cmp = dt_comparison(x, val);
      CHECK(check_open(cmp.map, cmp.representatives.diagram, cmp.target.diagram).open);
      CHECK(check_open_up_to_homotopy(cmp.map, cmp.representatives.diagram, cmp.target.diagram, a).open);
    }
  }

  auto e = fx::load("edge.gcx");
  auto ne = natural_system(e, Valuation::pi0());
  auto broken = identity_map(ne.diagram);
  broken.strict[2] = false;
  auto rep = check_open(broken, ne.diagram, ne.diagram);
  CHECK(rep.failure == OpenReport::Failure::NotIso);
  CHECK(rep.witness.find("[v1]") == 0);

  auto drop = identity_map(ne.diagram);
  drop.on_objects[0] = 1;
  CHECK(check_open(drop, ne.diagram, ne.diagram).failure == OpenReport::Failure::NotSurjective);
}

TEST_CASE("the crush map is not open up to homotopy") {
  auto a = fx::load("fig_a.gcx");
  auto b = fx::load("fig_b.gcx");
  auto m = parse_cmap(fx::read("crush.cmap"), a, b);
  for (const auto& val : valuations()) {
    auto na = natural_system(a, val);
    auto nb = natural_system(b, val);
    auto f = crush_induced_map(m, na, nb);
    auto rep = check_open_up_to_homotopy(f, na.diagram, nb.diagram, ValueAdapter(val));
    CHECK_FALSE(rep.open);
    CHECK(rep.failure == OpenReport::Failure::NotIso);
    CHECK(rep.witness.find("[c2] -> [d1,v1,d2,v2,d3]") == 0);
    if (val.kind == Valuation::Kind::Pi0) CHECK(rep.witness == "[c2] -> [d1,v1,d2,v2,d3]: 1 component vs 2 components");
  }
}

TEST_CASE("refinement maps are open up to homotopy") {
  for (const auto& s : splits()) {
    CAPTURE(s.file);
    auto x = fx::load(s.file);
    auto sub = s.split(x.decl());
    auto y = Complex::build(sub.complex);
    for (const auto& val : valuations()) {
      auto fine = natural_system(y, val);
      auto coarse = natural_system(x, val);
      auto rep = check_open_up_to_homotopy(refinement_map(sub, fine, coarse), fine.diagram, coarse.diagram,
                                           ValueAdapter(val));
      CAPTURE(rep.text());
      CHECK(rep.open);
    }
  }
}

TEST_CASE("bisimilarity of small diagrams") {
  ValueAdapter a(Valuation::pi0());
  auto r = bisimilar(one_object(1), one_object(2), a);
  CHECK(r.verdict == Verdict::No);
  CHECK(r.exact);
  CHECK(r.trace.back().find("has no candidate partner") != std::string::npos);
  CHECK(r.text(one_object(1), one_object(2)).rfind("BISIMILAR no\n", 0) == 0);

  auto e = fx::load("edge.gcx");
  auto ne = natural_system(e, Valuation::pi0());
  auto same = bisimilar(ne.diagram, ne.diagram, a);
  CHECK(same.verdict == Verdict::Yes);
  CHECK(same.relation.triples.size() == 6 * 6);
  CHECK(verify_bisimulation(diagonal(ne.diagram), ne.diagram, ne.diagram, a).ok);

  auto partial = diagonal(ne.diagram);
  partial.triples.pop_back();
  auto v = verify_bisimulation(partial, ne.diagram, ne.diagram, a);
  CHECK_FALSE(v.ok);
  CHECK(v.clause.rfind("(1)", 0) == 0);

  auto split = Complex::build(subdivide_edge(e.decl(), "d").complex);
  auto ns = natural_system(split, Valuation::pi0());
  auto sub = bisimilar(ne.diagram, ns.diagram, a);
  CHECK(sub.verdict == Verdict::Yes);
  CHECK(verify_bisimulation(sub.relation, ne.diagram, ns.diagram, a).ok);
}

TEST_CASE("bisimilarity finds exactly the relabelled copies") {
  gen::Rng rng(4242);
  ValueAdapter a(Valuation::pi0());
  for (int trial = 0; trial < 60; ++trial) {
    auto d = random_diagram(rng, rng.uniform(1, 6));
    auto copy = relabelled(rng, d);
    auto r = bisimilar(d, copy, a);
    CHECK(r.verdict == Verdict::Yes);
    CHECK(verify_bisimulation(r.relation, d, copy, a).ok);

    auto other = random_diagram(rng, rng.uniform(1, 6));
    auto s = bisimilar(d, other, a);
    CHECK(s.verdict != Verdict::Unknown);
    if (s.verdict == Verdict::Yes) CHECK(verify_bisimulation(s.relation, d, other, a).ok);
    CHECK(bisimilar(other, d, a).verdict == s.verdict);
  }
}

TEST_CASE("spans of open maps give verified bisimulations") {
  auto e = fx::load("edge.gcx");
  for (const auto& val : valuations()) {
    ValueAdapter a(val);
    auto ne = natural_system(e, val);
    auto id = identity_map(ne.diagram);
    auto r = span_to_bisimulation(id, id, ne.diagram, ne.diagram, ne.diagram, a);
    CHECK(r.triples.size() == ne.diagram.index.size());
    CHECK(verify_bisimulation(r, ne.diagram, ne.diagram, a).ok);
  }

  for (const auto& s : splits()) {
    CAPTURE(s.file);
    auto x = fx::load(s.file);
    auto sub = s.split(x.decl());
    auto y = Complex::build(sub.complex);
    for (const auto& val : valuations()) {
      ValueAdapter a(val);
      auto fine = natural_system(y, val);
      auto coarse = natural_system(x, val);
      auto p = refinement_map(sub, fine, coarse);
      auto r = span_to_bisimulation(p, identity_map(fine.diagram), fine.diagram, coarse.diagram, fine.diagram, a);
      CHECK(verify_bisimulation(r, coarse.diagram, fine.diagram, a).ok);
      CHECK(bisimilar(coarse.diagram, fine.diagram, a).verdict == Verdict::Yes);
    }
  }

  auto fa = fx::load("fig_a.gcx");
  auto fb = fx::load("fig_b.gcx");
  auto na = natural_system(fa, Valuation::pi0());
  auto nb = natural_system(fb, Valuation::pi0());
  auto crush = crush_induced_map(parse_cmap(fx::read("crush.cmap"), fa, fb), na, nb);
  ValueAdapter a(Valuation::pi0());
  CHECK(kind_of([&] { span_to_bisimulation(identity_map(na.diagram), crush, na.diagram, na.diagram, nb.diagram, a); }) ==
        ErrorKind::NotOpen);
}

TEST_CASE("bisimilarity is deterministic across thread counts") {
  auto x = fx::load("fig_a.gcx");
  auto y = Complex::build(subdivide_2cell(x.decl(), "c2", 2).complex);
  for (const auto& val : valuations()) {
    ValueAdapter a(val);
    auto f = natural_system(x, val);
    auto g = natural_system(y, val);
    BisimOptions par;
    par.jobs = 4;
    CHECK(bisimilar(f.diagram, g.diagram, a).text(f.diagram, g.diagram) ==
          bisimilar(f.diagram, g.diagram, a, par).text(f.diagram, g.diagram));
  }
}
