#include "doctest.h"
#include "gen.hpp"

#include "mds/error.hpp"
#include "mds/reparam.hpp"

#include <set>

using namespace mds;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

PLMap pl(std::initializer_list<std::pair<Rational, Rational>> pts) {
  std::vector<Breakpoint> v;
  for (auto& [t, x] : pts) v.push_back({t, x});
  return PLMap(std::move(v));
}

MoorePath single(const PLMap& f) { return MoorePath(f.domain_end(), {f}); }

// Pointwise evaluation of a word without going through moore_compose.
std::vector<Rational> eval_word(const std::vector<WordPiece>& word, const Rational& u) {
  Rational lo = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Rational hi = lo + word[i].share;
    if (u <= hi || i + 1 == word.size()) return word[i].path(word[i].clock.map()((u - lo) / word[i].share));
    lo = hi;
  }
  return {};
}

std::vector<WordPiece> random_word(gen::Rng& rng, std::size_t n) {
  std::vector<WordPiece> word;
  auto shares = rng.partition(1, static_cast<int>(n));
  std::vector<Rational> at{rng.value()};
  for (std::size_t i = 0; i < n; ++i) {
    // The piece must start where the previous one ended after its clock.
    PLMap clock = rng.clock(1);
    MoorePath path = rng.path(1, 1, {0});
    const Rational offset = at[0] - path(clock(0))[0];
    path = MoorePath(1, {path.components()[0].shifted(0, offset)});
    at = path(clock(1));
    word.push_back({path, Clock(clock, 1), shares[i + 1] - shares[i]});
  }
  return word;
}

}  // namespace

TEST_CASE("PLMap canonical form drops collinear points") {
  PLMap f = pl({{0, 0}, {q(1, 2), q(1, 2)}, {1, 1}});
  CHECK(f.points().size() == 2);
  CHECK(f == PLMap::identity(0, 1));
  CHECK_THROWS_AS(pl({{0, 0}, {0, 1}}), Error);
  CHECK(PLMap({{q(1, 3), 2}}).is_constant());
}

TEST_CASE("PLMap evaluation and searches") {
  PLMap f = pl({{0, 0}, {q(1, 2), 1}, {1, 1}, {2, 3}});
  CHECK(f(q(1, 4)) == q(1, 2));
  CHECK(f(q(3, 2)) == 2);
  CHECK(f.first_reaching(1) == q(1, 2));
  CHECK(f.last_below(1) == 1);
  CHECK(f.first_reaching(0) == 0);
  CHECK(f.last_below(3) == 2);
  CHECK_THROWS_AS(f(3), Error);
}

TEST_CASE("compose_pl examples") {
  CHECK(compose_pl(PLMap::identity(0, 1), pl({{0, 0}, {1, 2}})) == pl({{0, 0}, {1, 2}}));
  CHECK(compose_pl(pl({{0, 0}, {1, q(1, 2)}}), PLMap::identity(0, 1)) == pl({{0, 0}, {1, q(1, 2)}}));
  CHECK(compose_pl(pl({{0, 0}, {q(1, 2), 1}, {1, 1}}), pl({{0, 0}, {1, 3}})) ==
        pl({{0, 0}, {q(1, 2), 3}, {1, 3}}));
  try {
    compose_pl(pl({{0, 0}, {1, 2}}), PLMap::identity(0, 1));
    FAIL("expected DomainMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainMismatch);
  }
}

TEST_CASE("compose_pl agrees with pointwise composition") {
  gen::Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    PLMap f = rng.surjection(rng.positive() * 2, 1);
    MoorePath g = rng.path(1, 1, {rng.value()});
    PLMap h = compose_pl(f, g.components()[0]);
    std::set<Rational> probes;
    for (auto& b : f.points()) probes.insert(b.t);
    for (auto& b : h.points()) probes.insert(b.t);
    std::vector<Rational> ps(probes.begin(), probes.end());
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) probes.insert((ps[i] + ps[i + 1]) / 2);
    for (auto& t : probes) REQUIRE(h(t) == g.components()[0](f(t)));
  }
}

TEST_CASE("moore_compose examples") {
  MoorePath p = single(PLMap::identity(0, 1));
  MoorePath qq = single(pl({{0, 1}, {2, 2}}));
  MoorePath r = moore_compose(p, qq);
  CHECK(r.length() == 3);
  CHECK(r(2)[0] == q(3, 2));

  MoorePath unit = MoorePath::constant(0, {0});
  MoorePath any = single(pl({{0, 0}, {1, 5}, {3, 2}}));
  CHECK(moore_compose(unit, any) == any);
  CHECK(moore_compose(any, MoorePath::constant(0, {2})) == any);

  MoorePath a = single(pl({{0, 0}, {1, 1}}));
  MoorePath b = single(pl({{0, 1}, {1, 0}}));
  MoorePath c = single(pl({{0, 0}, {2, 4}}));
  CHECK(moore_compose(moore_compose(a, b), c) == moore_compose(a, moore_compose(b, c)));
  CHECK_THROWS_AS(moore_compose(a, a), Error);
}

TEST_CASE("tensor_reparams examples") {
  std::vector<Surjection> halves{Surjection(mu(q(1, 2))), Surjection(mu(q(1, 2)))};
  CHECK(tensor_reparams(halves).map() == pl({{0, 0}, {1, 2}}));
  std::vector<Surjection> one{Surjection(PLMap::identity(0, 1))};
  CHECK(tensor_reparams(one).map() == PLMap::identity(0, 1));
  std::vector<Surjection> mixed{Surjection(PLMap::identity(0, 1)), Surjection(pl({{0, 0}, {q(1, 2), 0}, {1, 1}}))};
  CHECK(tensor_reparams(mixed).map() == pl({{0, 0}, {1, 1}, {q(3, 2), 1}, {2, 2}}));
}

TEST_CASE("membership classes are checked eagerly") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  CHECK(kind_of([] { Surjection(pl({{0, 0}, {1, 2}, {2, 1}})); }) == ErrorKind::NotMonotone);
  CHECK(kind_of([] { Surjection(pl({{0, q(1, 2)}, {1, 1}})); }) == ErrorKind::NotSurjective);
  CHECK(kind_of([] { Surjection(pl({{0, 0}, {1, 1}}), 1, 2); }) == ErrorKind::NotSurjective);
  CHECK(kind_of([] { Clock(pl({{0, 0}, {1, 3}}), 2); }) == ErrorKind::DomainMismatch);
  CHECK(kind_of([] { Clock(pl({{0, 0}, {2, 1}}), 2); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("normalized_compose examples") {
  MoorePath id = single(PLMap::identity(0, 1));
  MoorePath back = single(pl({{0, 1}, {1, 2}}));
  MoorePath n = normalized_compose(id, back);
  CHECK(n(q(1, 4))[0] == q(1, 2));
  CHECK(n == single(pl({{0, 0}, {1, 2}})));
  MoorePath ca = MoorePath::constant(1, {3});
  CHECK(normalized_compose(ca, ca) == ca);
}

TEST_CASE("normalized_compose equals Moore composition of halved paths") {
  gen::Rng rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    MoorePath p = rng.path(1, 2, {rng.value(), rng.value()});
    MoorePath r = rng.path(1, 2, p.end());
    MoorePath lhs = normalized_compose(p, r);
    MoorePath rhs = moore_compose(reparametrize(p, mu(q(1, 2))), reparametrize(r, mu(q(1, 2))));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("is_regular examples") {
  CHECK(is_regular(MoorePath::constant(1, {1, 2})));
  CHECK_FALSE(is_regular(MoorePath(1, {pl({{0, 0}, {q(1, 4), 1}, {q(1, 2), 1}, {1, 2}}),
                                        pl({{0, 0}, {q(1, 4), 3}, {q(1, 2), 3}, {1, 0}})})));
  CHECK(is_regular(single(pl({{0, 0}, {q(1, 3), 1}, {1, 5}}))));
  // One component flat is not enough.
  CHECK(is_regular(MoorePath(1, {pl({{0, 0}, {q(1, 2), 0}, {1, 1}}), PLMap::identity(0, 1)})));
}

TEST_CASE("regularity is preserved by composition and destroyed by flat reparametrization") {
  gen::Rng rng(17);
  int checked = 0;
  while (checked < 100) {
    MoorePath p = rng.path(rng.positive() * 2, 1, {rng.value()});
    MoorePath r = rng.path(rng.positive() * 2, 1, p.end());
    if (p.is_constant() || r.is_constant() || !is_regular(p) || !is_regular(r)) continue;
    REQUIRE(is_regular(moore_compose(p, r)));
    MoorePath unit = reparametrize(p, mu_inverse(p.length()));
    const Rational a = rng.positive() / 2;
    const Rational b = a + rng.positive() / 4;
    PLMap flat = pl({{0, 0}, {a, a}, {b, a}, {1, 1}});
    REQUIRE_FALSE(is_regular(reparametrize(unit, flat)));
    ++checked;
  }
}

TEST_CASE("interchange of composition and tensor (n <= 4)") {
  gen::Rng rng(2024);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const std::size_t arity = static_cast<std::size_t>(rng.uniform(1, 2));
    std::vector<MoorePath> gammas;
    std::vector<Surjection> phis;
    std::vector<Rational> at(arity);
    for (auto& x : at) x = rng.value();
    for (std::size_t i = 0; i < n; ++i) {
      const Rational target = rng.uniform(0, 4) == 0 ? Rational(0) : rng.positive() * 2;
      const Rational source = target == 0 ? Rational(rng.uniform(0, 1)) * rng.positive() : rng.positive() * 2;
      gammas.push_back(rng.path(target, arity, at));
      at = gammas.back().end();
      phis.emplace_back(rng.surjection(source, target));
    }
    MoorePath lhs = reparametrize(moore_compose(gammas), tensor_reparams(phis).map());
    std::vector<MoorePath> parts;
    for (std::size_t i = 0; i < n; ++i) parts.push_back(reparametrize(gammas[i], phis[i].map()));
    REQUIRE(lhs == moore_compose(parts));
  }
}

TEST_CASE("scaling of normalized words") {
  gen::Rng rng(7);
  for (int iter = 0; iter < 150; ++iter) {
    const int n = rng.uniform(1, 4);
    auto cuts = rng.partition(1, n);
    const Rational scale = rng.positive() * 3;
    std::vector<MoorePath> lhs_parts;
    std::vector<MoorePath> rhs_parts;
    std::vector<Rational> at{rng.value()};
    for (int i = 0; i < n; ++i) {
      const Rational li = cuts[i + 1] - cuts[i];
      MoorePath g = rng.path(1, 1, at);
      at = g.end();
      lhs_parts.push_back(reparametrize(g, mu(li)));
      rhs_parts.push_back(reparametrize(g, mu(li * scale)));
    }
    REQUIRE(reparametrize(moore_compose(lhs_parts), mu(scale)) == moore_compose(rhs_parts));
  }
}

TEST_CASE("renormalize examples") {
  MoorePath g1 = single(PLMap::identity(0, 1));
  MoorePath g2 = single(pl({{0, 1}, {1, 3}}));
  Clock id(PLMap::identity(0, 1), 1);
  std::vector<WordPiece> word{{g1, id, q(1, 2)}, {g2, id, q(1, 2)}};

  auto r = renormalize(word, Clock(pl({{0, q(1, 2)}, {1, 1}}), 1));
  REQUIRE(r.word.size() == 1);
  CHECK(r.word[0].path == g2);
  CHECK(r.word[0].share == 1);
  CHECK(r.clock.map() == PLMap::identity(0, 1));
  CHECK(r.first == 1);
  CHECK(r.last == 2);

  auto same = renormalize(word, id);
  REQUIRE(same.word.size() == 2);
  CHECK(same.word[0].path == g1);
  CHECK(same.word[1].path == g2);
  CHECK(same.clock.map() == PLMap::identity(0, 1));

  auto flat = renormalize(word, Clock(PLMap::constant(0, 1, q(1, 3)), 1));
  REQUIRE(flat.word.size() == 1);
  CHECK(flat.word[0].path.is_constant());
  CHECK(flat.word[0].path(0) == std::vector<Rational>{q(2, 3)});
}

TEST_CASE("renormalize rejects ill-formed words") {
  MoorePath g1 = single(PLMap::identity(0, 1));
  Clock id(PLMap::identity(0, 1), 1);
  std::vector<WordPiece> gap{{g1, id, q(1, 2)}, {g1, id, q(1, 2)}};
  CHECK_THROWS_AS(renormalize(gap, id), Error);
  std::vector<WordPiece> shares{{g1, id, q(1, 3)}};
  CHECK_THROWS_AS(renormalize(shares, id), Error);
}

TEST_CASE("renormalize reproduces the composite exactly") {
  gen::Rng rng(99);
  for (int iter = 0; iter < 150; ++iter) {
    auto word = random_word(rng, static_cast<std::size_t>(rng.uniform(1, 4)));
    Clock phi(rng.clock(1), 1);
    auto r = renormalize(word, phi);
    MoorePath direct = reparametrize(assemble(word), phi.map());
    MoorePath via_word = reparametrize(assemble(r.word), r.clock.map());
    MoorePath via_pieces = assemble(r.pieces);

    std::set<Rational> probes;
    for (auto& t : direct.breakpoints()) probes.insert(t);
    for (auto& t : via_word.breakpoints()) probes.insert(t);
    for (auto& t : via_pieces.breakpoints()) probes.insert(t);
    for (auto& b : phi.map().points()) probes.insert(b.t);
    for (auto& t : probes) {
      const auto expect = eval_word(word, phi.map()(t));
      REQUIRE(direct(t) == expect);
      REQUIRE(via_word(t) == expect);
      REQUIRE(via_pieces(t) == expect);
    }
    REQUIRE(direct == via_word);
    REQUIRE(direct == via_pieces);
  }
}
