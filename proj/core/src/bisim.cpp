#include "mds/bisim.hpp"

#include "mds/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>

namespace mds {

namespace {

Integer mod(const Integer& a, const Integer& d) {
  Integer r = a % d;
  return r < 0 ? r + d : r;
}

std::vector<IntMatrix> signed_permutations(std::size_t r, std::size_t extra) {
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IntMatrix> out;
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << r); ++signs) {
      IntMatrix m(r + extra, r + extra);
      for (std::size_t c = 0; c < r; ++c) m(perm[c], c) = (signs >> c) & 1 ? -1 : 1;
      for (std::size_t t = r; t < r + extra; ++t) m(t, t) = 1;
      out.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

IntMatrix block(const IntMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
  IntMatrix out(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = m(i, j);
  return out;
}

std::size_t torsion_order(const std::vector<Integer>& torsion, std::size_t cap) {
  Integer n = 1;
  for (const auto& d : torsion) n *= d;
  if (n > cap) throw Error(ErrorKind::CapExceeded, "torsion subgroup of order " + n.str() + " is too large to enumerate");
  return static_cast<std::size_t>(n);
}

/// Elements of Z/d_1 + ... + Z/d_t in mixed radix order.
std::vector<std::vector<Integer>> torsion_elements(const std::vector<Integer>& torsion, std::size_t cap) {
  const std::size_t n = torsion_order(torsion, cap);
  std::vector<std::vector<Integer>> out;
  out.reserve(n);
  std::vector<Integer> x(torsion.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (++x[i] < torsion[i]) break;
      x[i] = 0;
    }
  }
  return out;
}

std::vector<Integer> apply_mod(const IntMatrix& m, const std::vector<Integer>& x, const std::vector<Integer>& torsion) {
  std::vector<Integer> y(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    y[i] = mod(y[i], torsion[i]);
  }
  return y;
}

bool unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  auto snf = smith_normal_form(m);
  if (snf.rank != m.rows()) return false;
  for (const auto& d : snf.diagonal())
    if (d != 1) return false;
  return true;
}

std::optional<IntMatrix> integer_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    const Rational lead = a[c][c];
    for (auto& v : a[c]) v /= lead;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_integer(a[i][n + j])) return std::nullopt;
      inv(i, j) = numerator(a[i][n + j]);
    }
  return inv;
}

std::string failure_name(OpenReport::Failure f) {
  switch (f) {
    case OpenReport::Failure::None: return "none";
    case OpenReport::Failure::NotSurjective: return "not surjective";
    case OpenReport::Failure::NotIso: return "component not iso";
    case OpenReport::Failure::NotNatural: return "not natural";
    case OpenReport::Failure::NotLiftable: return "no lift";
  }
  return "";
}

template <class ComponentOk>
OpenReport check_map(const DiagramMap& m, const Diagram& src, const Diagram& dst, ComponentOk&& component_ok) {
  OpenReport r;
  auto fail = [&](OpenReport::Failure f, std::string w) {
    r.failure = f;
    r.witness = std::move(w);
    return r;
  };
  const std::size_t n = src.index.size();
  if (m.on_objects.size() != n || m.components.size() != n)
    throw Error(ErrorKind::NotFunctorial, "diagram map does not cover the source objects");

  std::vector<bool> hit(dst.index.size(), false);
  for (std::size_t j : m.on_objects) hit.at(j) = true;
  for (std::size_t j = 0; j < hit.size(); ++j)
    if (!hit[j]) return fail(OpenReport::Failure::NotSurjective, "object " + dst.index.label(j) + " is not hit");

  for (std::size_t i = 0; i < n; ++i)
    if (!component_ok(i))
      return fail(OpenReport::Failure::NotIso, src.index.label(i) + " -> " + dst.index.label(m.on_objects[i]) + ": " +
                                                   src.values[i].text() + " vs " +
                                                   dst.values[m.on_objects[i]].text());

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k : src.index.above(i)) {
      if (!dst.index.has_morphism(m.on_objects[i], m.on_objects[k]))
        return fail(OpenReport::Failure::NotNatural,
                    src.index.label(i) + " -> " + src.index.label(k) + " has no image morphism");
      const auto& target = dst.values[m.on_objects[k]];
      auto lhs = compose(dst.map(m.on_objects[i], m.on_objects[k]), m.components[i], target);
      auto rhs = compose(m.components[k], src.map(i, k), target);
      if (lhs != rhs)
        return fail(OpenReport::Failure::NotNatural, "square at " + src.index.label(i) + " -> " + src.index.label(k) +
                                                         ": " + lhs.text() + " vs " + rhs.text());
    }

  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> reach;
    for (std::size_t k : src.index.above(i)) reach.insert(m.on_objects[k]);
    for (std::size_t j : dst.index.above(m.on_objects[i]))
      if (!reach.count(j))
        return fail(OpenReport::Failure::NotLiftable, dst.index.label(m.on_objects[i]) + " -> " + dst.index.label(j) +
                                                          " does not lift from " + src.index.label(i));
  }
  r.open = true;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- adapter

ValueAdapter::ValueAdapter(const Valuation& val, std::size_t cap)
    : kind_(val.kind == Valuation::Kind::Pi0 ? Kind::FiniteSets : Kind::GradedGroups), cap_(cap) {}

ValueAdapter::Candidates ValueAdapter::iso_candidates(const ValuedSpace& a, const ValuedSpace& b) const {
  Candidates out;
  if (kind_ == Kind::FiniteSets) {
    if (a.components != b.components) return out;
    std::vector<std::size_t> perm(a.components);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (out.isos.size() >= cap_) throw Error(ErrorKind::CapExceeded, "too many bijections");
      ValuedMap m;
      m.on_components = perm;
      out.isos.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }
  if (a.homology != b.homology) return out;
  std::vector<std::vector<IntMatrix>> per_degree;
  for (const auto& g : a.homology) {
    if (g.rank >= 2 || !g.torsion.empty()) out.incomplete = true;
    if (g.rank > 6) throw Error(ErrorKind::CapExceeded, "free rank " + std::to_string(g.rank) + " is too large");
    per_degree.push_back(signed_permutations(g.rank, g.torsion.size()));
  }
  std::size_t total = 1;
  for (const auto& d : per_degree) {
    total *= d.size();
    if (total > cap_) throw Error(ErrorKind::CapExceeded, "too many candidate isomorphisms");
  }
  for (std::size_t k = 0; k < total; ++k) {
    ValuedMap m;
    std::size_t rest = k;
    for (const auto& d : per_degree) {
      m.on_homology.push_back(d[rest % d.size()]);
      rest /= d.size();
    }
    out.isos.push_back(std::move(m));
  }
  return out;
}

bool ValueAdapter::is_iso(const ValuedMap& m, const ValuedSpace& a, const ValuedSpace& b) const {
  if (kind_ == Kind::FiniteSets) {
    if (a.components != b.components || m.on_components.size() != a.components) return false;
    std::vector<bool> hit(b.components, false);
    for (std::size_t c : m.on_components) {
      if (c >= b.components || hit[c]) return false;
      hit[c] = true;
    }
    return true;
  }
  if (a.homology != b.homology || m.on_homology.size() != a.homology.size()) return false;
  for (std::size_t k = 0; k < a.homology.size(); ++k) {
    const auto& g = a.homology[k];
    const std::size_t r = g.rank, n = g.rank + g.torsion.size();
    const IntMatrix& mk = m.on_homology[k];
    if (mk.rows() != n || mk.cols() != n) return false;
    if (!unimodular(block(mk, 0, r, 0, r))) return false;
    if (!block(mk, 0, r, r, n).is_zero()) return false;
    if (g.torsion.empty()) continue;
    const IntMatrix t = block(mk, r, n, r, n);
    std::set<std::vector<Integer>> images;
    for (const auto& x : torsion_elements(g.torsion, cap_)) images.insert(apply_mod(t, x, g.torsion));
    if (images.size() != torsion_order(g.torsion, cap_)) return false;
  }
  return true;
}

std::optional<ValuedMap> ValueAdapter::inverse(const ValuedMap& m, const ValuedSpace& a, const ValuedSpace& b) const {
  if (!is_iso(m, a, b)) return std::nullopt;
  ValuedMap inv;
  if (kind_ == Kind::FiniteSets) {
    inv.on_components.assign(m.on_components.size(), 0);
    for (std::size_t c = 0; c < m.on_components.size(); ++c) inv.on_components[m.on_components[c]] = c;
    return inv;
  }
  for (std::size_t k = 0; k < a.homology.size(); ++k) {
    const auto& g = a.homology[k];
    const std::size_t r = g.rank, n = g.rank + g.torsion.size();
    const IntMatrix& mk = m.on_homology[k];
    auto free_inv = integer_inverse(block(mk, 0, r, 0, r));
    if (!free_inv) return std::nullopt;
    IntMatrix t_inv(n - r, n - r);
    if (!g.torsion.empty()) {
      const IntMatrix t = block(mk, r, n, r, n);
      const auto elements = torsion_elements(g.torsion, cap_);
      for (std::size_t c = 0; c < n - r; ++c) {
        std::vector<Integer> unit(n - r, 0);
        unit[c] = 1;
        auto it = std::find_if(elements.begin(), elements.end(),
                               [&](const auto& x) { return apply_mod(t, x, g.torsion) == unit; });
        if (it == elements.end()) return std::nullopt;
        for (std::size_t i = 0; i < n - r; ++i) t_inv(i, c) = (*it)[i];
      }
    }
    IntMatrix lower = t_inv * block(mk, r, n, 0, r) * *free_inv;
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out(i, j) = (*free_inv)(i, j);
    for (std::size_t i = r; i < n; ++i) {
      for (std::size_t j = 0; j < r; ++j) out(i, j) = -lower(i - r, j);
      for (std::size_t j = r; j < n; ++j) out(i, j) = t_inv(i - r, j - r);
    }
    inv.on_homology.push_back(std::move(out));
  }
  inv = reduce(std::move(inv), a);
  if (compose(inv, m, a) != identity(a) || compose(m, inv, b) != identity(b)) return std::nullopt;
  return inv;
}

ValuedMap ValueAdapter::compose(const ValuedMap& g, const ValuedMap& f, const ValuedSpace& target) const {
  return mds::compose(g, f, target);
}

// ---------------------------------------------------------------- open maps

std::string OpenReport::text() const {
  if (open) return "OPEN yes";
  return "OPEN no\nwitness " + failure_name(failure) + ": " + witness;
}

OpenReport check_open(const DiagramMap& m, const Diagram& src, const Diagram& dst) {
  return check_map(m, src, dst, [&](std::size_t i) { return i < m.strict.size() && m.strict[i]; });
}

OpenReport check_open_up_to_homotopy(const DiagramMap& m, const Diagram& src, const Diagram& dst,
                                     const ValueAdapter& adapter) {
  return check_map(m, src, dst, [&](std::size_t i) {
    return adapter.is_iso(m.components[i], src.values[i], dst.values[m.on_objects[i]]);
  });
}

// ---------------------------------------------------------------- bisimulation

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "";
}

std::string BisimResult::text(const Diagram& f, const Diagram& g) const {
  std::string out = "BISIMILAR " + to_string(verdict) + "\n";
  if (verdict == Verdict::Yes) {
    for (const auto& t : relation.triples)
      out += "triple " + f.index.label(t.i) + " ~ " + g.index.label(t.j) + " via " + t.eta.text() + "\n";
    return out;
  }
  for (const auto& line : trace) out += line + "\n";
  return out;
}

namespace {

struct Slot {
  std::size_t i = 0, j = 0;
  std::shared_ptr<const std::vector<ValuedMap>> isos;
  std::vector<char> alive;
};

}  // namespace

BisimResult bisimilar(const Diagram& f, const Diagram& g, const ValueAdapter& adapter, const BisimOptions& opts) {
  BisimResult res;
  const std::size_t nf = f.index.size(), ng = g.index.size();

  std::map<std::pair<std::string, std::string>, std::pair<std::shared_ptr<const std::vector<ValuedMap>>, bool>> cache;
  std::vector<long> slot_of(nf * ng, -1);
  std::vector<Slot> slots;
  bool incomplete = false;
  std::size_t seeds = 0;
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < ng; ++j) {
      auto key = std::make_pair(f.values[i].text(), g.values[j].text());
      auto it = cache.find(key);
      if (it == cache.end()) {
        auto c = adapter.iso_candidates(f.values[i], g.values[j]);
        it = cache.emplace(key, std::make_pair(std::make_shared<const std::vector<ValuedMap>>(std::move(c.isos)),
                                               c.incomplete))
                 .first;
      }
      const auto& [isos, partial] = it->second;
      if (isos->empty()) continue;
      incomplete = incomplete || partial;
      seeds += isos->size();
      if (seeds > opts.cap) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(opts.cap) + " candidate triples");
      slot_of[i * ng + j] = static_cast<long>(slots.size());
      slots.push_back({i, j, isos, std::vector<char>(isos->size(), 1)});
    }
  res.trace.push_back("seed: " + std::to_string(seeds) + " candidate triples over " + std::to_string(slots.size()) +
                      " object pairs");

  auto slot_at = [&](std::size_t i, std::size_t j) -> const Slot* {
    const long s = slot_of[i * ng + j];
    return s < 0 ? nullptr : &slots[static_cast<std::size_t>(s)];
  };
  auto forth = [&](std::size_t i, const ValuedMap& eta, std::size_t j) {
    for (std::size_t gen : f.index.out(i)) {
      const std::size_t i2 = f.index.generators()[gen].to;
      const ValuedMap& phi = f.generator_maps[gen];
      bool found = false;
      for (std::size_t j2 : g.index.above(j)) {
        const Slot* s = slot_at(i2, j2);
        if (!s) continue;
        const auto lhs = adapter.compose(g.map(j, j2), eta, g.values[j2]);
        for (std::size_t c = 0; c < s->isos->size() && !found; ++c)
          found = s->alive[c] && adapter.equal(lhs, adapter.compose((*s->isos)[c], phi, g.values[j2]));
        if (found) break;
      }
      if (!found) return false;
    }
    return true;
  };
  auto back = [&](std::size_t i, const ValuedMap& eta, std::size_t j) {
    for (std::size_t gen : g.index.out(j)) {
      const std::size_t j2 = g.index.generators()[gen].to;
      const auto lhs = adapter.compose(g.generator_maps[gen], eta, g.values[j2]);
      bool found = false;
      for (std::size_t i2 : f.index.above(i)) {
        const Slot* s = slot_at(i2, j2);
        if (!s) continue;
        const ValuedMap& phi = f.map(i, i2);
        for (std::size_t c = 0; c < s->isos->size() && !found; ++c)
          found = s->alive[c] && adapter.equal(lhs, adapter.compose((*s->isos)[c], phi, g.values[j2]));
        if (found) break;
      }
      if (!found) return false;
    }
    return true;
  };

  for (int pass = 1;; ++pass) {
    std::vector<std::vector<char>> next(slots.size());
    detail::parallel_for(slots.size(), opts.jobs, [&](std::size_t s) {
      const Slot& slot = slots[s];
      next[s] = slot.alive;
      for (std::size_t c = 0; c < slot.isos->size(); ++c)
        if (slot.alive[c]) next[s][c] = forth(slot.i, (*slot.isos)[c], slot.j) && back(slot.i, (*slot.isos)[c], slot.j);
    });
    std::size_t removed = 0, kept = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      for (std::size_t c = 0; c < next[s].size(); ++c) {
        removed += slots[s].alive[c] && !next[s][c];
        kept += next[s][c];
      }
      slots[s].alive = std::move(next[s]);
    }
    res.trace.push_back("pass " + std::to_string(pass) + ": removed " + std::to_string(removed) + ", kept " +
                        std::to_string(kept));
    if (!removed) break;
  }

  std::vector<bool> seeded_f(nf, false), seeded_g(ng, false), alive_f(nf, false), alive_g(ng, false);
  for (const auto& s : slots) {
    seeded_f[s.i] = seeded_g[s.j] = true;
    for (std::size_t c = 0; c < s.isos->size(); ++c)
      if (s.alive[c]) {
        alive_f[s.i] = alive_g[s.j] = true;
        res.relation.triples.push_back({s.i, (*s.isos)[c], s.j});
      }
  }
  std::vector<std::string> uncovered;
  auto note = [&](const Diagram& d, const std::vector<bool>& seeded, const std::vector<bool>& alive, const char* side) {
    for (std::size_t i = 0; i < alive.size(); ++i)
      if (!alive[i])
        uncovered.push_back(std::string("object ") + d.index.label(i) + " of " + side +
                            (seeded[i] ? " lost every partner" : " has no candidate partner") + " (" +
                            d.values[i].text() + ")");
  };
  note(f, seeded_f, alive_f, "F");
  note(g, seeded_g, alive_g, "G");

  if (uncovered.empty()) {
    auto v = verify_bisimulation(res.relation, f, g, adapter);
    if (!v.ok) throw Error(ErrorKind::NotFunctorial, "fixpoint relation fails verification: " + v.clause);
    res.verdict = Verdict::Yes;
    res.exact = true;
    return res;
  }
  const std::size_t shown = std::min<std::size_t>(uncovered.size(), 20);
  res.trace.insert(res.trace.end(), uncovered.begin(), uncovered.begin() + static_cast<long>(shown));
  if (uncovered.size() > shown) res.trace.push_back("... " + std::to_string(uncovered.size() - shown) + " more");
  res.relation.triples.clear();
  res.verdict = incomplete ? Verdict::Unknown : Verdict::No;
  res.exact = !incomplete;
  if (incomplete) res.trace.push_back("candidate isomorphisms were incomplete for some pair");
  return res;
}

VerifyReport verify_bisimulation(const Bisimulation& r, const Diagram& f, const Diagram& g,
                                 const ValueAdapter& adapter) {
  VerifyReport rep;
  auto fail = [&](std::string clause) {
    rep.clause = std::move(clause);
    return rep;
  };
  std::vector<bool> cov_f(f.index.size(), false), cov_g(g.index.size(), false);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<const ValuedMap*>> by_pair;
  for (const auto& t : r.triples) {
    if (t.i >= f.index.size() || t.j >= g.index.size()) return fail("(0) triple refers to an unknown object");
    if (!adapter.is_iso(t.eta, f.values[t.i], g.values[t.j]))
      return fail("(0) " + t.eta.text() + " is not an isomorphism " + f.index.label(t.i) + " -> " + g.index.label(t.j));
    cov_f[t.i] = cov_g[t.j] = true;
    by_pair[{t.i, t.j}].push_back(&t.eta);
  }
  for (std::size_t i = 0; i < cov_f.size(); ++i)
    if (!cov_f[i]) return fail("(1) object " + f.index.label(i) + " of F is not covered");
  for (std::size_t j = 0; j < cov_g.size(); ++j)
    if (!cov_g[j]) return fail("(1) object " + g.index.label(j) + " of G is not covered");

  // Squares are memoized per triple and shared by both clauses.
  for (const auto& t : r.triples) {
    const auto& is = f.index.above(t.i);
    const auto& js = g.index.above(t.j);
    std::vector<std::optional<ValuedMap>> lhs(js.size());
    std::vector<signed char> memo(is.size() * js.size(), -1);
    auto square = [&](std::size_t a, std::size_t b) {
      signed char& m = memo[a * js.size() + b];
      if (m >= 0) return m == 1;
      m = 0;
      const std::size_t i2 = is[a], j2 = js[b];
      auto it = by_pair.find({i2, j2});
      if (it == by_pair.end()) return false;
      if (!lhs[b]) lhs[b] = adapter.compose(g.map(t.j, j2), t.eta, g.values[j2]);
      const ValuedMap& phi = f.map(t.i, i2);
      m = std::any_of(it->second.begin(), it->second.end(), [&](const ValuedMap* eta2) {
        return adapter.equal(*lhs[b], adapter.compose(*eta2, phi, g.values[j2]));
      });
      return m == 1;
    };
    for (std::size_t a = 0; a < is.size(); ++a) {
      bool ok = false;
      for (std::size_t b = 0; b < js.size() && !ok; ++b) ok = square(a, b);
      if (!ok)
        return fail("(2) forth fails for " + f.index.label(t.i) + " ~ " + g.index.label(t.j) + " along " +
                    f.index.label(t.i) + " -> " + f.index.label(is[a]));
    }
    for (std::size_t b = 0; b < js.size(); ++b) {
      bool ok = false;
      for (std::size_t a = 0; a < is.size() && !ok; ++a) ok = square(a, b);
      if (!ok)
        return fail("(2) back fails for " + f.index.label(t.i) + " ~ " + g.index.label(t.j) + " along " +
                    g.index.label(t.j) + " -> " + g.index.label(js[b]));
    }
  }
  rep.ok = true;
  return rep;
}

Bisimulation span_to_bisimulation(const DiagramMap& p, const DiagramMap& q, const Diagram& h, const Diagram& f,
                                  const Diagram& g, const ValueAdapter& adapter) {
  for (const auto* leg : {&p, &q}) {
    const Diagram& target = leg == &p ? f : g;
    auto rep = check_open_up_to_homotopy(*leg, h, target, adapter);
    if (!rep.open)
      throw Error(ErrorKind::NotOpen, std::string(leg == &p ? "left" : "right") + " leg: " + rep.witness);
  }
  Bisimulation r;
  std::set<std::tuple<std::size_t, std::size_t, std::string>> seen;
  for (std::size_t k = 0; k < h.index.size(); ++k) {
    const std::size_t i = p.on_objects[k], j = q.on_objects[k];
    auto inv = adapter.inverse(p.components[k], h.values[k], f.values[i]);
    if (!inv) throw Error(ErrorKind::NotOpen, "component at " + h.index.label(k) + " has no inverse");
    ValuedMap eta = adapter.compose(q.components[k], *inv, g.values[j]);
    if (seen.insert({i, j, eta.text()}).second) r.triples.push_back({i, std::move(eta), j});
  }
  std::sort(r.triples.begin(), r.triples.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  return r;
}

}  // namespace mds
