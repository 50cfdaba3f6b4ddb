#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"

#include "mds/algtop.hpp"
#include "mds/error.hpp"

#include <numeric>

using namespace mds;

namespace {

IntMatrix random_matrix(gen::Rng& rng, std::size_t rows, std::size_t cols, int span) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-span, span);
  return m;
}

// Fraction-free elimination over the rationals: rank and determinant oracles.
std::vector<std::vector<Rational>> to_rational(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rational(m(i, j));
  return a;
}

std::size_t rank_q(const IntMatrix& m) {
  auto a = to_rational(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Rational det_q(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors.
Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  subsets(m.rows(), k, 0, cur, rows);
  subsets(m.cols(), k, 0, cur, cols);
  Integer g = 0;
  for (const auto& r : rows)
    for (const auto& c : cols) {
      std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a[i][j] = Rational(m(r[i], c[j]));
      Integer d = numerator(det_q(a));
      g = boost::multiprecision::gcd(g, d < 0 ? Integer(-d) : d);
    }
  return g;
}

std::vector<CellId> states_of(const Complex& x) {
  std::vector<CellId> out;
  for (CellId c = 0; c < x.size(); ++c)
    if (x.dim(c) == 0) out.push_back(c);
  return out;
}

FgAbGroup hom(const Complex& x, const char* a, const char* b, int k) { return homology(path_complex(x, x.id(a), x.id(b)), k); }

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  auto s = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  CHECK(s.diagonal() == std::vector<Integer>{2, 4});
  CHECK(s.rank == 2);
  CHECK(s.u * IntMatrix{{2, 4}, {6, 8}} * s.v == s.d);

  auto z = smith_normal_form(IntMatrix(3, 2));
  CHECK(z.rank == 0);
  CHECK(z.d.is_zero());

  auto e = smith_normal_form(IntMatrix(0, 3));
  CHECK(e.rank == 0);
  CHECK(e.v == IntMatrix::identity(3));

  auto t = smith_normal_form(IntMatrix{{0, 2, 0}, {3, 0, 0}});
  CHECK(t.diagonal() == std::vector<Integer>{1, 6});
}

TEST_CASE("smith normal form round trip on random 6x6 matrices") {
  gen::Rng rng(6);
  for (int round = 0; round < 200; ++round) {
    auto m = random_matrix(rng, 6, 6, round % 3 == 0 ? 2 : 9);
    if (round % 5 == 0)
      for (std::size_t j = 0; j < 6; ++j) m(3, j) = m(1, j) * 2 - m(0, j);
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(s.u * s.u_inv == IntMatrix::identity(6));
    CHECK(s.v * s.v_inv == IntMatrix::identity(6));
    auto d = s.diagonal();
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
    REQUIRE(d.size() == s.rank);
    for (std::size_t i = 0; i < s.rank; ++i) CHECK(d[i] > 0);
    for (std::size_t i = 1; i < s.rank; ++i) CHECK(d[i] % d[i - 1] == 0);
    CHECK(s.rank == rank_q(m));
    Integer prod = s.rank == 6 ? 1 : 0;
    for (const auto& x : d) prod *= x;
    Integer det = numerator(det_q(to_rational(m)));
    CHECK(prod == (det < 0 ? Integer(-det) : det));
  }
}

TEST_CASE("smith diagonal matches gcd of minors") {
  gen::Rng rng(17);
  for (int round = 0; round < 60; ++round) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 4));
    const std::size_t c = static_cast<std::size_t>(rng.uniform(1, 4));
    auto m = random_matrix(rng, r, c, 6);
    auto s = smith_normal_form(m);
    auto d = s.diagonal();
    Integer prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      prod *= k <= d.size() ? d[k - 1] : Integer(0);
      CHECK(prod == minor_gcd(m, k));
    }
  }
}

TEST_CASE("group text") {
  CHECK(FgAbGroup{}.text() == "0");
  CHECK(FgAbGroup{2, {}}.text() == "Z^2");
  CHECK(FgAbGroup{1, {2, 4}}.text() == "Z^1 + Z/2 + Z/4");
  CHECK(FgAbGroup{0, {3}}.text() == "Z/3");
}

TEST_CASE("homology of the fixtures") {
  auto sq = fx::load("square.gcx");
  auto p = path_complex(sq, sq.id("s00"), sq.id("s11"));
  auto c = chain_complex(p);
  CHECK(c.ranks == std::vector<std::size_t>{2, 1});
  CHECK(c.d(1) == IntMatrix{{-1}, {1}});
  CHECK(homology(c, 0) == FgAbGroup{1, {}});
  CHECK(homology(c, 1).is_zero());
  CHECK(homology_line(p, 0, homology(c, 0)) == "H0(s00,s11) = Z^1");

  auto l = fx::load("loopcell.gcx");
  auto cl = chain_complex(path_complex(l, l.id("u0"), l.id("u1")));
  CHECK(cl.d(1) == IntMatrix{{0}});
  CHECK(hom(l, "u0", "u1", 1) == FgAbGroup{1, {}});
  CHECK(hom(l, "u0", "u1", 0) == FgAbGroup{1, {}});

  auto t = fx::load("twocells.gcx");
  CHECK(hom(t, "x0", "x2", 0) == FgAbGroup{1, {}});
  CHECK(hom(t, "x0", "x2", 1).is_zero());
  auto open = path_complex(t, t.id("x0"), t.id("x2")).truncated(1);
  CHECK(homology(open, 1) == FgAbGroup{1, {}});

  auto b = fx::load("fig_b.gcx");
  CHECK(hom(b, "v0", "v3", 0) == FgAbGroup{2, {}});
  auto h = fx::load("hollow.gcx");
  CHECK(hom(h, "s00", "s11", 0) == FgAbGroup{2, {}});
  CHECK(hom(h, "s11", "s00", 0).is_zero());
}

TEST_CASE("components") {
  auto a = fx::load("fig_a.gcx");
  auto v = trace_space(a, a.id("v0"), a.id("v3"));
  auto p = pi0(v);
  CHECK(p.count == 2);
  CHECK(p.component == std::vector<std::size_t>{0, 1, 0});
  CHECK(p.leaders == std::vector<std::size_t>{0, 1});

  auto sq = fx::load("square.gcx");
  CHECK(pi0(path_complex(sq, sq.id("s00"), sq.id("s11"))).count == 1);

  auto single = trace_space(a, a.id("c2"), a.id("c2"));
  CHECK(pi0(single).count == 1);
  CHECK(homology(chain_complex(single), 0) == FgAbGroup{1, {}});
}

TEST_CASE("homology agrees with rational ranks, components and Euler characteristic") {
  for (const auto& file : fx::gallery()) {
    auto x = fx::load(file);
    for (CellId s : states_of(x))
      for (CellId t : states_of(x)) {
        CAPTURE(file);
        auto v = TraceSpaceValue{path_complex(x, s, t), false};
        auto c = chain_complex(v);
        CHECK(c.is_complex());
        long euler_c = 0, euler_h = 0;
        for (int k = 0; k <= v.dimension() + 1; ++k) {
          auto g = homology(c, k);
          const std::size_t expect = c.rank(k) - rank_q(c.d(k)) - rank_q(c.d(k + 1));
          CHECK(g.rank == expect);
          CHECK(g.torsion.empty());
          euler_c += (k % 2 ? -1 : 1) * static_cast<long>(c.rank(k));
          euler_h += (k % 2 ? -1 : 1) * static_cast<long>(g.rank);
        }
        CHECK(euler_c == euler_h);
        CHECK(homology(c, 0).rank == pi0(v).count);
      }
  }
}

TEST_CASE("homology generators are cycles with unit coordinates") {
  for (const auto& file : fx::gallery()) {
    auto x = fx::load(file);
    for (CellId s : states_of(x))
      for (CellId t : states_of(x)) {
        auto c = chain_complex(path_complex(x, s, t));
        for (int k = 0; k <= 2; ++k) {
          auto h = homology_basis(c, k);
          CHECK((c.d(k) * h.cycles).is_zero());
          CHECK(h.coords * h.cycles == IntMatrix::identity(h.moduli.size()));
        }
      }
  }
}

TEST_CASE("torsion in a hand-built chain complex") {
  ChainComplex c;
  c.ranks = {1, 1, 1};
  c.boundary = {IntMatrix(0, 1), IntMatrix{{0}}, IntMatrix{{2}}};
  CHECK(homology(c, 1) == FgAbGroup{0, {2}});
  CHECK(homology(c, 0) == FgAbGroup{1, {}});
  CHECK(homology(c, 2).is_zero());
  auto h = homology_basis(c, 1);
  CHECK(h.moduli == std::vector<Integer>{2});
}

TEST_CASE("homology is invariant under both subdivisions") {
  for (const auto& file : fx::gallery()) {
    auto decl = fx::decl(file);
    auto x = Complex::build(decl);
    std::vector<Subdivision> subs;
    for (const auto& e : decl.edges) subs.push_back(subdivide_edge(decl, e.name));
    for (const auto& c : decl.cells2)
      for (int k : {1, 2}) subs.push_back(subdivide_2cell(decl, c.name, k));
    for (const auto& sub : subs) {
      auto y = Complex::build(sub.complex);
      for (CellId s : states_of(x))
        for (CellId t : states_of(x)) {
          auto px = path_complex(x, s, t);
          auto py = path_complex(y, y.id(x.name(s)), y.id(x.name(t)));
          for (int k : {0, 1}) {
            CAPTURE(file);
            CHECK(homology(px, k) == homology(py, k));
          }
        }
    }
  }
}

TEST_CASE("valuation parsing and text") {
  CHECK(Valuation::parse("pi0").kind == Valuation::Kind::Pi0);
  auto h = Valuation::parse("hom:2");
  CHECK(h.kind == Valuation::Kind::Homology);
  CHECK(h.max_degree == 2);
  CHECK(h.text() == "hom:2");
  CHECK_THROWS_AS(Valuation::parse("hom:"), Error);
  CHECK_THROWS_AS(Valuation::parse("hom:x"), Error);
  CHECK_THROWS_AS(Valuation::parse("h1"), Error);

  auto b = fx::load("fig_b.gcx");
  auto v = trace_space(b, b.id("d1"), b.id("d3"));
  CHECK(valuate(v, Valuation::pi0()).space.text() == "2 components");
  CHECK(valuate(v, Valuation::homology(1)).space.text() == "H0 = Z^2; H1 = 0");
  auto a = fx::load("fig_a.gcx");
  CHECK(valuate(trace_space(a, a.id("c2"), a.id("c2")), Valuation::pi0()).space.text() == "1 component");
}

TEST_CASE("induced maps: extensions, identities and composition") {
  auto t = fx::load("twocells.gcx");
  auto mid = trace_space(t, t.id("x1"), t.id("x2"));
  auto all = trace_space(t, t.id("x0"), t.id("x2"));
  auto f = extend_map(mid, all, Side::Left, {t.id("f")});
  for (auto val : {Valuation::pi0(), Valuation::homology(1)}) {
    auto vm = valuate(mid, val);
    auto va = valuate(all, val);
    auto m = induced(f, mid, vm, all, va, val);
    if (val.kind == Valuation::Kind::Pi0) {
      CHECK(m.on_components == std::vector<std::size_t>{0});
    } else {
      CHECK(m.on_homology[0] == IntMatrix{{1}});
      CHECK(m.on_homology[1].rows() == 0);
    }
    CHECK(induced(identity_map(all), all, va, all, va, val) == identity(va.space));
  }
}

TEST_CASE("induced maps are functorial along extension chains") {
  gen::Rng rng(3);
  for (const auto& file : fx::gallery()) {
    auto x = fx::load(file);
    for (CellId s : states_of(x))
      for (CellId u : states_of(x)) {
        auto base = trace_space(x, s, s);
        auto right_paths = enumerate_vertex_paths(x, s, u);
        if (right_paths.empty()) continue;
        for (const auto& w : right_paths) {
          if (w.size() < 2) continue;
          // s -> m -> u split after the first edge
          const CellId m = x.cell(w.front()).plus;
          auto vm = trace_space(x, s, m);
          auto vu = trace_space(x, s, u);
          auto f = extend_map(base, vm, Side::Right, {w.front()});
          auto g = extend_map(vm, vu, Side::Right, Word(w.begin() + 1, w.end()));
          auto gf = compose(g, f);
          CHECK(gf == extend_map(base, vu, Side::Right, w));
          for (auto val : {Valuation::pi0(), Valuation::homology(1)}) {
            auto a = valuate(base, val);
            auto b = valuate(vm, val);
            auto c = valuate(vu, val);
            CHECK(induced(gf, base, a, vu, c, val) ==
                  compose(induced(g, vm, b, vu, c, val), induced(f, base, a, vm, b, val), c.space));
          }
        }
      }
  }
}

TEST_CASE("lower and upper representatives induce the same maps") {
  for (const auto& file : fx::gallery()) {
    auto x = fx::load(file);
    for (CellId c = 0; c < x.size(); ++c) {
      if (x.dim(c) != 2) continue;
      const CellId minus = x.cell(c).minus;
      for (CellId d = 0; d < x.size(); ++d) {
        if (d != c && !has_trace(x, c, d)) continue;
        auto src = trace_space(x, c, d);
        auto dst = trace_space(x, minus, d);
        auto lo = extend_map(src, dst, Side::Left, representative(x, c));
        auto up = extend_map(src, dst, Side::Left, representative(x, c, true));
        for (auto val : {Valuation::pi0(), Valuation::homology(1)}) {
          CAPTURE(file);
          auto vs = valuate(src, val);
          auto vd = valuate(dst, val);
          CHECK(induced(lo, src, vs, dst, vd, val) == induced(up, src, vs, dst, vd, val));
        }
      }
    }
  }
}
