#include "mds/reparam.hpp"

#include "mds/error.hpp"

#include <algorithm>

namespace mds {

namespace {

Rational slope(const Breakpoint& a, const Breakpoint& b) { return (b.v - a.v) / (b.t - a.t); }

std::vector<Breakpoint> canonicalize(std::vector<Breakpoint> pts) {
  if (pts.empty()) throw Error(ErrorKind::InvalidPLMap, "empty breakpoint list");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i - 1].t < pts[i].t))
      throw Error(ErrorKind::InvalidPLMap, "abscissae must be strictly increasing at index " + std::to_string(i));
  }
  std::vector<Breakpoint> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    while (out.size() >= 2 && slope(out[out.size() - 2], out.back()) == slope(out.back(), p)) out.pop_back();
    out.push_back(std::move(p));
  }
  return out;
}

Rational interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& t) {
  return a.v + (t - a.t) * (b.v - a.v) / (b.t - a.t);
}

}  // namespace

// ---------------------------------------------------------------- PLMap

PLMap::PLMap(std::vector<Breakpoint> points) : points_(canonicalize(std::move(points))) {}

PLMap PLMap::linear(const Rational& t0, const Rational& v0, const Rational& t1, const Rational& v1) {
  if (t0 == t1) {
    if (v0 != v1) throw Error(ErrorKind::InvalidPLMap, "two values on a one-point domain");
    return PLMap({{t0, v0}});
  }
  return PLMap({{t0, v0}, {t1, v1}});
}

PLMap PLMap::constant(const Rational& t0, const Rational& t1, const Rational& value) {
  return linear(t0, value, t1, value);
}

Rational PLMap::operator()(const Rational& t) const {
  if (t < domain_start() || t > domain_end())
    throw Error(ErrorKind::DomainMismatch,
                to_string(t) + " outside [" + to_string(domain_start()) + "," + to_string(domain_end()) + "]");
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const Breakpoint& p, const Rational& x) { return p.t < x; });
  if (it->t == t) return it->v;
  return interpolate(*(it - 1), *it, t);
}

Rational PLMap::min_value() const {
  return std::min_element(points_.begin(), points_.end(), [](auto& a, auto& b) { return a.v < b.v; })->v;
}

Rational PLMap::max_value() const {
  return std::max_element(points_.begin(), points_.end(), [](auto& a, auto& b) { return a.v < b.v; })->v;
}

bool PLMap::is_nondecreasing() const {
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (points_[i].v < points_[i - 1].v) return false;
  return true;
}

bool PLMap::is_constant() const { return points_.size() == 1 || (points_.size() == 2 && points_[0].v == points_[1].v); }

PLMap PLMap::restrict(const Rational& a, const Rational& b) const {
  if (a < domain_start() || b > domain_end() || b < a)
    throw Error(ErrorKind::DomainMismatch, "restriction interval outside the domain");
  std::vector<Breakpoint> pts{{a, (*this)(a)}};
  for (const auto& p : points_)
    if (p.t > a && p.t < b) pts.push_back(p);
  if (b > a) pts.push_back({b, (*this)(b)});
  return PLMap(std::move(pts));
}

PLMap PLMap::shifted(const Rational& dt, const Rational& dv) const {
  std::vector<Breakpoint> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.push_back({p.t + dt, p.v + dv});
  return PLMap(std::move(pts));
}

Rational PLMap::first_reaching(const Rational& value) const {
  if (points_.front().v >= value) return points_.front().t;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].v >= value) {
      const auto& a = points_[i - 1];
      const auto& b = points_[i];
      return a.t + (value - a.v) * (b.t - a.t) / (b.v - a.v);
    }
  }
  throw Error(ErrorKind::DomainMismatch, to_string(value) + " is never reached");
}

Rational PLMap::last_below(const Rational& value) const {
  if (points_.back().v <= value) return points_.back().t;
  for (std::size_t i = points_.size() - 1; i-- > 0;) {
    if (points_[i].v <= value) {
      const auto& a = points_[i];
      const auto& b = points_[i + 1];
      return a.t + (value - a.v) * (b.t - a.t) / (b.v - a.v);
    }
  }
  throw Error(ErrorKind::DomainMismatch, to_string(value) + " is below the range");
}

PLMap mu(const Rational& len) {
  if (len <= 0) throw Error(ErrorKind::DomainMismatch, "mu needs a positive length");
  return PLMap::linear(0, 0, len, 1);
}

PLMap mu_inverse(const Rational& len) {
  if (len <= 0) throw Error(ErrorKind::DomainMismatch, "mu needs a positive length");
  return PLMap::linear(0, 0, 1, len);
}

// ---------------------------------------------------------------- classes

Surjection::Surjection(PLMap map) : map_(std::move(map)) {
  if (map_.domain_start() != 0) throw Error(ErrorKind::DomainMismatch, "reparametrization must start at 0");
  if (!map_.is_nondecreasing()) throw Error(ErrorKind::NotMonotone, "reparametrization is not non-decreasing");
  if (map_(0) != 0) throw Error(ErrorKind::NotSurjective, "reparametrization must send 0 to 0");
}

Surjection::Surjection(PLMap map, const Rational& from, const Rational& to) : Surjection(std::move(map)) {
  if (map_.domain_end() != from)
    throw Error(ErrorKind::DomainMismatch, "expected domain [0," + to_string(from) + "]");
  if (this->to() != to) throw Error(ErrorKind::NotSurjective, "expected range [0," + to_string(to) + "]");
}

Clock::Clock(PLMap map, Rational bound) : map_(std::move(map)), bound_(std::move(bound)) {
  if (map_.domain_start() != 0 || map_.domain_end() != 1)
    throw Error(ErrorKind::DomainMismatch, "clock domain must be [0,1]");
  if (!map_.is_nondecreasing()) throw Error(ErrorKind::NotMonotone, "clock is not non-decreasing");
  if (map_.min_value() < 0 || map_.max_value() > bound_)
    throw Error(ErrorKind::DomainMismatch, "clock leaves [0," + to_string(bound_) + "]");
}

MoorePath::MoorePath(Rational length, std::vector<PLMap> components)
    : length_(std::move(length)), components_(std::move(components)) {
  if (length_ < 0) throw Error(ErrorKind::DomainMismatch, "negative Moore length");
  for (const auto& c : components_)
    if (c.domain_start() != 0 || c.domain_end() != length_)
      throw Error(ErrorKind::DomainMismatch, "component domain differs from [0," + to_string(length_) + "]");
}

MoorePath MoorePath::constant(const Rational& length, std::vector<Rational> point) {
  std::vector<PLMap> comps;
  for (auto& x : point) comps.push_back(PLMap::constant(0, length, x));
  return MoorePath(length, std::move(comps));
}

std::vector<Rational> MoorePath::operator()(const Rational& t) const {
  std::vector<Rational> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c(t));
  return out;
}

bool MoorePath::is_constant() const {
  return std::all_of(components_.begin(), components_.end(), [](const PLMap& c) { return c.is_constant(); });
}

std::vector<Rational> MoorePath::breakpoints() const {
  std::vector<Rational> ts{0, length_};
  for (const auto& c : components_)
    for (const auto& p : c.points()) ts.push_back(p.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

// ---------------------------------------------------------------- operations

PLMap compose_pl(const PLMap& f, const PLMap& g) {
  if (f.min_value() < g.domain_start() || f.max_value() > g.domain_end())
    throw Error(ErrorKind::DomainMismatch, "range of the inner map is not inside the domain of the outer map");
  std::vector<Rational> ts;
  const auto& fp = f.points();
  ts.push_back(fp.front().t);
  for (std::size_t i = 1; i < fp.size(); ++i) {
    const auto& a = fp[i - 1];
    const auto& b = fp[i];
    if (a.v != b.v) {
      const Rational lo = std::min(a.v, b.v);
      const Rational hi = std::max(a.v, b.v);
      std::vector<Rational> inner;
      for (const auto& gp : g.points())
        if (gp.t > lo && gp.t < hi) inner.push_back(a.t + (gp.t - a.v) * (b.t - a.t) / (b.v - a.v));
      std::sort(inner.begin(), inner.end());
      ts.insert(ts.end(), inner.begin(), inner.end());
    }
    ts.push_back(b.t);
  }
  std::vector<Breakpoint> pts;
  pts.reserve(ts.size());
  for (auto& t : ts) pts.push_back({t, g(f(t))});
  return PLMap(std::move(pts));
}

MoorePath reparametrize(const MoorePath& gamma, const PLMap& phi) {
  if (phi.domain_start() != 0) throw Error(ErrorKind::DomainMismatch, "reparametrization must start at 0");
  std::vector<PLMap> comps;
  comps.reserve(gamma.arity());
  for (const auto& c : gamma.components()) comps.push_back(compose_pl(phi, c));
  return MoorePath(phi.domain_end(), std::move(comps));
}

MoorePath moore_compose(const MoorePath& p, const MoorePath& q) {
  if (p.arity() != q.arity()) throw Error(ErrorKind::EndpointMismatch, "paths have different arities");
  if (p.end() != q.start()) throw Error(ErrorKind::EndpointMismatch, "end of the first path differs from start of the second");
  std::vector<PLMap> comps;
  comps.reserve(p.arity());
  for (std::size_t k = 0; k < p.arity(); ++k) {
    std::vector<Breakpoint> pts = p.components()[k].points();
    const auto& qp = q.components()[k].points();
    for (std::size_t i = 1; i < qp.size(); ++i) pts.push_back({qp[i].t + p.length(), qp[i].v});
    comps.emplace_back(std::move(pts));
  }
  return MoorePath(p.length() + q.length(), std::move(comps));
}

MoorePath moore_compose(std::span<const MoorePath> paths) {
  if (paths.empty()) throw Error(ErrorKind::EndpointMismatch, "empty composition");
  MoorePath out = paths.front();
  for (std::size_t i = 1; i < paths.size(); ++i) out = moore_compose(out, paths[i]);
  return out;
}

Surjection tensor_reparams(std::span<const Surjection> factors) {
  if (factors.empty()) throw Error(ErrorKind::DomainMismatch, "empty tensor product");
  std::vector<Breakpoint> pts;
  Rational dt = 0;
  Rational dv = 0;
  for (const auto& phi : factors) {
    const auto& fp = phi.map().points();
    for (std::size_t i = pts.empty() ? 0 : 1; i < fp.size(); ++i) pts.push_back({fp[i].t + dt, fp[i].v + dv});
    dt += phi.from();
    dv += phi.to();
  }
  return Surjection(PLMap(std::move(pts)), dt, dv);
}

MoorePath normalized_compose(const MoorePath& p, const MoorePath& q) {
  if (p.length() != 1 || q.length() != 1)
    throw Error(ErrorKind::DomainMismatch, "normalized composition needs length-1 paths");
  if (p.arity() != q.arity() || p.end() != q.start())
    throw Error(ErrorKind::EndpointMismatch, "end of the first path differs from start of the second");
  std::vector<PLMap> comps;
  for (std::size_t k = 0; k < p.arity(); ++k) {
    std::vector<Breakpoint> pts;
    for (const auto& b : p.components()[k].points()) pts.push_back({b.t / 2, b.v});
    const auto& qp = q.components()[k].points();
    for (std::size_t i = 1; i < qp.size(); ++i) pts.push_back({(qp[i].t + 1) / 2, qp[i].v});
    comps.emplace_back(std::move(pts));
  }
  return MoorePath(1, std::move(comps));
}

bool is_regular(const MoorePath& p) {
  if (p.is_constant()) return true;
  const auto ts = p.breakpoints();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    bool flat = true;
    for (const auto& c : p.components()) {
      if (c(ts[i - 1]) != c(ts[i])) {
        flat = false;
        break;
      }
    }
    if (flat) return false;
  }
  return true;
}

// ---------------------------------------------------------------- words

namespace {

MoorePath piece_path(const WordPiece& w) {
  // gamma o phi o mu_share
  return reparametrize(w.path, compose_pl(mu(w.share), w.clock.map()));
}

void check_word(std::span<const WordPiece> word) {
  if (word.empty()) throw Error(ErrorKind::IllFormedWord, "empty word");
  Rational total = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& w = word[i];
    if (w.path.length() != 1) throw Error(ErrorKind::IllFormedWord, "piece " + std::to_string(i) + " is not of length 1");
    if (w.clock.bound() != 1) throw Error(ErrorKind::IllFormedWord, "piece " + std::to_string(i) + " clock not in I(1)");
    if (w.share <= 0) throw Error(ErrorKind::IllFormedWord, "piece " + std::to_string(i) + " has non-positive share");
    if (w.path.arity() != word.front().path.arity())
      throw Error(ErrorKind::IllFormedWord, "pieces have different arities");
    total += w.share;
    if (i > 0) {
      const auto& prev = word[i - 1];
      if (prev.path(prev.clock.map()(1)) != w.path(w.clock.map()(0)))
        throw Error(ErrorKind::IllFormedWord, "pieces " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not composable");
    }
  }
  if (total != 1) throw Error(ErrorKind::IllFormedWord, "shares sum to " + to_string(total) + ", not 1");
}

}  // namespace

MoorePath assemble(std::span<const WordPiece> word) {
  check_word(word);
  std::vector<MoorePath> parts;
  parts.reserve(word.size());
  for (const auto& w : word) parts.push_back(piece_path(w));
  return moore_compose(parts);
}

Renormalized renormalize(std::span<const WordPiece> word, const Clock& phi) {
  if (phi.bound() != 1) throw Error(ErrorKind::IllFormedWord, "outer clock not in I(1)");
  const MoorePath gamma = assemble(word);
  const PLMap& f = phi.map();
  const PLMap identity = PLMap::identity(0, 1);

  if (f(0) == f(1) || gamma.is_constant()) {
    WordPiece only{MoorePath::constant(1, gamma(f(0))), Clock(identity, 1), 1};
    return Renormalized{{only}, Clock(identity, 1), {only}, 0, 0};
  }

  std::vector<Surjection> mus;
  mus.reserve(word.size());
  for (const auto& w : word) mus.emplace_back(mu(w.share));
  const Surjection spread = tensor_reparams(mus);  // [0,1] -> [0,n]
  const PLMap psi = compose_pl(f, spread.map());

  const Integer r_int = floor(psi(0));
  const Integer s_int = ceil(psi(1));
  const auto r = static_cast<std::size_t>(r_int);
  const auto s = static_cast<std::size_t>(s_int);
  const Rational span_len(s_int - r_int);

  Renormalized out{{}, Clock(identity, 1), {}, r, s};
  for (std::size_t i = r; i < s; ++i) out.word.push_back({word[i].path, word[i].clock, 1 / span_len});

  std::vector<Breakpoint> cp;
  for (const auto& b : psi.points()) cp.push_back({b.t, (b.v - Rational(r_int)) / span_len});
  out.clock = Clock(PLMap(std::move(cp)), 1);

  // Explicit pieces: L_0 = 0 < L_1 < ... < L_{s-r} = 1 with psi(L_i) = r + i.
  std::vector<Rational> cuts{0};
  for (std::size_t i = 1; i < s - r; ++i) cuts.push_back(psi.first_reaching(Rational(r + i)));
  cuts.push_back(1);
  for (std::size_t i = 1; i <= s - r; ++i) {
    const Rational& lo = cuts[i - 1];
    const Rational& hi = cuts[i];
    const std::size_t idx = r + i - 1;
    const PLMap local = psi.restrict(lo, hi).shifted(-lo, -Rational(idx));
    const PLMap bar = compose_pl(local, word[idx].clock.map());
    const Rational width = hi - lo;
    out.pieces.push_back({word[idx].path, Clock(compose_pl(mu_inverse(width), bar), 1), width});
  }
  return out;
}

}  // namespace mds
