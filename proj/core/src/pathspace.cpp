#include "mds/pathspace.hpp"

#include "mds/error.hpp"

#include <algorithm>
#include <deque>

namespace mds {

std::string word_text(const Complex& x, const Word& w) {
  if (w.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += x.name(w[i]);
  }
  return out;
}

std::string chain_text(const Complex& x, const std::vector<CellId>& chain) {
  std::string out = "[";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += ',';
    out += x.name(chain[i]);
  }
  return out + "]";
}

std::vector<std::size_t> track_positions(const Complex& x, const Word& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (x.dim(w[i]) == 2) out.push_back(i);
  return out;
}

Word face_word(const Complex& x, const Word& w, std::size_t position, int side) {
  const auto& info = x.cell(w.at(position));
  const auto& path = side == 0 ? info.lower : info.upper;
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(position));
  out.insert(out.end(), path.begin(), path.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(position) + 1, w.end());
  return out;
}

// ---------------------------------------------------------------- PathComplex

std::optional<std::size_t> PathComplex::find(const Word& w) const {
  const std::size_t k = track_positions(*complex_, w).size();
  if (k >= index_.size()) return std::nullopt;
  auto it = index_[k].find(w);
  if (it == index_[k].end()) return std::nullopt;
  return it->second;
}

void PathComplex::assemble(std::vector<std::vector<Word>> cubes) {
  while (!cubes.empty() && cubes.back().empty()) cubes.pop_back();
  cubes_ = std::move(cubes);
  index_.assign(cubes_.size(), {});
  faces_.assign(cubes_.size(), {});
  for (std::size_t k = 0; k < cubes_.size(); ++k)
    for (std::size_t i = 0; i < cubes_[k].size(); ++i) index_[k].emplace(cubes_[k][i], i);
  for (std::size_t k = 1; k < cubes_.size(); ++k) {
    faces_[k].resize(cubes_[k].size());
    for (std::size_t i = 0; i < cubes_[k].size(); ++i) {
      const auto& w = cubes_[k][i];
      for (auto pos : track_positions(*complex_, w)) {
        std::array<std::size_t, 2> f{};
        for (int side = 0; side < 2; ++side) {
          auto it = index_[k - 1].find(face_word(*complex_, w, pos, side));
          if (it == index_[k - 1].end())
            throw Error(ErrorKind::InvalidComplex, "face of " + word_text(*complex_, w) + " is missing");
          f[side] = it->second;
        }
        faces_[k][i].push_back(f);
      }
    }
  }
}

PathComplex PathComplex::truncated(int max_dim) const {
  PathComplex out(*complex_, source_, target_);
  std::vector<std::vector<Word>> kept;
  for (int k = 0; k <= std::min(max_dim, dimension()); ++k) kept.push_back(cubes_[k]);
  out.assemble(std::move(kept));
  return out;
}

std::string PathComplex::text() const {
  std::string out;
  for (int k = 0; k <= dimension(); ++k) {
    for (std::size_t i = 0; i < cubes_[k].size(); ++i) {
      out += "cube" + std::to_string(k) + " " + word_text(*complex_, cubes_[k][i]) + " faces:";
      if (k > 0)
        for (const auto& f : faces_[k][i])
          out += " " + word_text(*complex_, cubes_[k - 1][f[0]]) + " " + word_text(*complex_, cubes_[k - 1][f[1]]);
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

std::vector<bool> reaching(const Complex& x, CellId beta) {
  std::vector<std::vector<CellId>> back(x.size());
  for (CellId c = 0; c < x.size(); ++c)
    if (x.dim(c) == 1) back[x.cell(c).plus].push_back(x.cell(c).minus);
  std::vector<bool> seen(x.size(), false);
  std::vector<CellId> todo{beta};
  seen[beta] = true;
  while (!todo.empty()) {
    CellId s = todo.back();
    todo.pop_back();
    for (CellId p : back[s])
      if (!seen[p]) {
        seen[p] = true;
        todo.push_back(p);
      }
  }
  return seen;
}

void check_states(const Complex& x, CellId alpha, CellId beta) {
  if (alpha >= x.size() || x.dim(alpha) != 0) throw Error(ErrorKind::UnknownState, "source is not a state");
  if (beta >= x.size() || x.dim(beta) != 0) throw Error(ErrorKind::UnknownState, "target is not a state");
}

template <class Visit>
void walk(const Complex& x, CellId alpha, CellId beta, bool with_tracks, std::size_t cap, Visit&& visit) {
  const auto ok = reaching(x, beta);
  Word word;
  std::size_t found = 0;
  auto rec = [&](auto&& self, CellId at) -> void {
    if (at == beta) {
      if (++found > cap) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " paths");
      visit(word);
      return;
    }
    const auto& next = with_tracks ? x.letters_from(at) : x.edges_from(at);
    for (CellId c : next) {
      const CellId to = x.cell(c).plus;
      if (!ok[to]) continue;
      word.push_back(c);
      self(self, to);
      word.pop_back();
    }
  };
  if (ok[alpha]) rec(rec, alpha);
}

}  // namespace

std::vector<Word> enumerate_vertex_paths(const Complex& x, CellId alpha, CellId beta, std::size_t cap) {
  require_computable(x);
  check_states(x, alpha, beta);
  std::vector<Word> out;
  walk(x, alpha, beta, false, cap, [&](const Word& w) { out.push_back(w); });
  return out;
}

PathComplex path_complex(const Complex& x, CellId alpha, CellId beta, std::size_t cap) {
  require_computable(x);
  check_states(x, alpha, beta);
  std::vector<std::vector<Word>> cubes;
  walk(x, alpha, beta, true, cap, [&](const Word& w) {
    const std::size_t k = track_positions(x, w).size();
    if (cubes.size() <= k) cubes.resize(k + 1);
    cubes[k].push_back(w);
  });
  PathComplex p(x, alpha, beta);
  p.assemble(std::move(cubes));
  return p;
}

std::optional<std::string> check_precubical(const PathComplex& p) {
  for (int k = 2; k <= p.dimension(); ++k) {
    for (std::size_t c = 0; c < p.count(k); ++c) {
      for (int j = 2; j <= k; ++j) {
        for (int i = 1; i < j; ++i) {
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              const auto lhs = p.face(k - 1, p.face(k, c, j)[b], i)[a];
              const auto rhs = p.face(k - 1, p.face(k, c, i)[a], j - 1)[b];
              if (lhs != rhs)
                return "identity fails on " + word_text(p.complex(), p.cube(k, c)) + " for i=" + std::to_string(i) +
                       " j=" + std::to_string(j);
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- trace spaces

std::string TraceSpaceValue::vertex_text(std::size_t v) const {
  if (v < base.count(0)) return word_text(base.complex(), base.cube(0, v));
  return "tau";
}

bool has_trace(const Complex& x, CellId c, CellId d) {
  std::vector<bool> seen(x.size(), false);
  std::deque<CellId> todo{c};
  seen[c] = true;
  while (!todo.empty()) {
    CellId at = todo.front();
    todo.pop_front();
    if (at == d) return true;
    for (CellId n : x.successors(at))
      if (!seen[n]) {
        seen[n] = true;
        todo.push_back(n);
      }
  }
  return false;
}

CellId exit_state(const Complex& x, CellId c) { return x.dim(c) == 0 ? c : x.cell(c).plus; }
CellId entry_state(const Complex& x, CellId d) { return x.dim(d) == 0 ? d : x.cell(d).minus; }

TraceSpaceValue trace_space(const Complex& x, CellId c, CellId d, std::size_t cap) {
  require_computable(x);
  if (c == d && x.dim(c) > 0) {
    TraceSpaceValue v{PathComplex(x, x.cell(c).plus, x.cell(c).minus), true};
    v.base.assemble({});
    return v;
  }
  if (!has_trace(x, c, d))
    throw Error(ErrorKind::NoTrace, "no discrete trace from " + x.name(c) + " to " + x.name(d));
  return {path_complex(x, exit_state(x, c), entry_state(x, d), cap), false};
}

// ---------------------------------------------------------------- cubical maps

int CubeImage::degree() const {
  return static_cast<int>(std::count_if(coords.begin(), coords.end(), [](int c) { return c >= 0; }));
}

namespace {

CubeImage face_image(const CubicalMap& f, int k, std::size_t cube) { return f.images.at(k).at(cube); }

[[noreturn]] void not_cubical(const std::string& msg) { throw Error(ErrorKind::NotCubical, msg); }

}  // namespace

CubicalMap tabulate(const TraceSpaceValue& src, const TraceSpaceValue& dst,
                    const std::function<MappedCube(const Word&)>& on_word, const MappedCube& on_extra) {
  CubicalMap f;
  const int top = std::max(src.dimension(), 0);
  f.images.resize(static_cast<std::size_t>(top) + 1);
  auto place = [&](const MappedCube& m, int k, const std::string& what) -> CubeImage {
    if (static_cast<int>(m.coords.size()) != k) not_cubical(what + ": coordinate map of wrong length");
    CubeImage img{0, m.coords};
    if (m.extra) {
      if (!dst.extra_point || img.degree() != 0) not_cubical(what + ": sent to a missing point");
      img.cube = dst.extra_index();
      return img;
    }
    const int deg = img.degree();
    if (static_cast<int>(track_positions(dst.base.complex(), m.word).size()) != deg)
      not_cubical(what + ": image " + word_text(dst.base.complex(), m.word) + " has the wrong degree");
    auto at = dst.base.find(m.word);
    if (!at) not_cubical(what + ": image " + word_text(dst.base.complex(), m.word) + " is not a cube of the target");
    img.cube = *at;
    return img;
  };
  for (int k = 0; k <= src.base.dimension(); ++k)
    for (const auto& w : src.base.cubes(k))
      f.images[k].push_back(place(on_word(w), k, "cube " + word_text(src.base.complex(), w)));
  if (src.extra_point) f.images[0].push_back(place(on_extra, 0, "extra point"));
  check_cubical(f, src, dst);
  return f;
}

void check_cubical(const CubicalMap& f, const TraceSpaceValue& src, const TraceSpaceValue& dst) {
  if (f.images.empty() || f.images[0].size() != src.vertex_count()) not_cubical("vertex images do not cover the source");
  for (int k = 1; k <= src.base.dimension(); ++k) {
    if (static_cast<int>(f.images.size()) <= k || f.images[k].size() != src.base.count(k))
      not_cubical("images missing in degree " + std::to_string(k));
    for (std::size_t c = 0; c < src.base.count(k); ++c) {
      const auto& img = f.images[k][c];
      const int deg = img.degree();
      int last = -1;
      for (int t : img.coords) {
        if (t < 0) continue;
        if (t <= last || t >= deg) not_cubical("coordinate map is not order preserving");
        last = t;
      }
      for (int j = 1; j <= k; ++j) {
        std::vector<int> rest;
        const int t = img.coords[j - 1];
        for (int i = 0; i < k; ++i) {
          if (i == j - 1) continue;
          int u = img.coords[i];
          if (u >= 0 && t >= 0 && u > t) --u;
          rest.push_back(u);
        }
        for (int a = 0; a < 2; ++a) {
          const auto face = face_image(f, k - 1, src.base.face(k, c, j)[a]);
          CubeImage expect{img.cube, rest};
          if (t >= 0) expect.cube = dst.base.face(deg, img.cube, t + 1)[a];
          if (face != expect)
            not_cubical("face " + std::to_string(j) + "^" + std::to_string(a) + " of " +
                        word_text(src.base.complex(), src.base.cube(k, c)) + " is not carried to the matching face");
        }
      }
    }
  }
}

CubicalMap identity_map(const TraceSpaceValue& v) {
  CubicalMap f;
  f.images.resize(static_cast<std::size_t>(std::max(v.dimension(), 0)) + 1);
  for (std::size_t i = 0; i < v.vertex_count(); ++i) f.images[0].push_back({i, {}});
  for (int k = 1; k <= v.base.dimension(); ++k) {
    std::vector<int> coords(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) coords[j] = j;
    for (std::size_t i = 0; i < v.base.count(k); ++i) f.images[k].push_back({i, coords});
  }
  return f;
}

CubicalMap compose(const CubicalMap& g, const CubicalMap& f) {
  CubicalMap out;
  out.images.resize(f.images.size());
  for (std::size_t k = 0; k < f.images.size(); ++k) {
    for (const auto& img : f.images[k]) {
      const auto& next = g.images.at(static_cast<std::size_t>(img.degree())).at(img.cube);
      CubeImage c{next.cube, {}};
      for (int t : img.coords) c.coords.push_back(t < 0 ? -1 : next.coords.at(static_cast<std::size_t>(t)));
      out.images[k].push_back(std::move(c));
    }
  }
  return out;
}

Word representative(const Complex& x, CellId c, bool use_upper) {
  const auto& info = x.cell(c);
  if (info.dim == 1) return {c};
  if (info.dim == 2) return use_upper ? info.upper : info.lower;
  return {};
}

CubicalMap extend_map(const TraceSpaceValue& src, const TraceSpaceValue& dst, Side side, const Word& path) {
  const Complex& x = dst.base.complex();
  for (CellId c : path)
    if (x.dim(c) != 1) throw Error(ErrorKind::EndpointMismatch, "extension path must consist of edges");
  if (!path.empty()) {
    const CellId join = side == Side::Left ? x.cell(path.back()).plus : x.cell(path.front()).minus;
    const CellId expect = side == Side::Left ? src.base.source() : src.base.target();
    if (!src.extra_point && join != expect)
      throw Error(ErrorKind::EndpointMismatch, "extension path does not meet the trace space endpoint");
  }
  auto on_word = [&](const Word& w) {
    MappedCube m;
    if (side == Side::Left) {
      m.word = path;
      m.word.insert(m.word.end(), w.begin(), w.end());
    } else {
      m.word = w;
      m.word.insert(m.word.end(), path.begin(), path.end());
    }
    const auto k = track_positions(src.base.complex(), w).size();
    for (std::size_t j = 0; j < k; ++j) m.coords.push_back(static_cast<int>(j));
    return m;
  };
  return tabulate(src, dst, on_word, MappedCube{});
}

// ---------------------------------------------------------------- PL paths

void validate_path(const Complex& x, const DirectedPathPL& g) {
  if (g.word.empty()) throw Error(ErrorKind::EndpointMismatch, "a directed path needs at least one cell");
  for (std::size_t i = 0; i < g.word.size(); ++i) {
    const auto& l = g.word[i];
    if (l.cell >= x.size() || (x.dim(l.cell) != 1 && x.dim(l.cell) != 2))
      throw Error(ErrorKind::UnknownCell, "letter " + std::to_string(i) + " is not a 1- or 2-cell");
    if (x.dim(l.cell) == 2 && (l.z <= 0 || l.z >= 1))
      throw Error(ErrorKind::DomainMismatch, "meridian of " + x.name(l.cell) + " must lie in (0,1)");
    if (i > 0 && x.cell(g.word[i - 1].cell).plus != x.cell(l.cell).minus)
      throw Error(ErrorKind::EndpointMismatch,
                  x.name(g.word[i - 1].cell) + " does not end where " + x.name(l.cell) + " starts");
  }
  if (g.clock.domain_start() != 0 || g.clock.domain_end() != 1)
    throw Error(ErrorKind::DomainMismatch, "clock domain must be [0,1]");
  if (!g.clock.is_nondecreasing()) throw Error(ErrorKind::NotMonotone, "clock is not non-decreasing");
  if (g.clock.min_value() < 0 || g.clock.max_value() > Rational(g.word.size()))
    throw Error(ErrorKind::DomainMismatch, "clock leaves [0," + std::to_string(g.word.size()) + "]");
}

CellId cell_at(const Complex& x, const DirectedPathPL& g, const Rational& u) {
  if (is_integer(u)) {
    const auto i = static_cast<std::size_t>(floor(u));
    return i == 0 ? x.cell(g.word.front().cell).minus : x.cell(g.word.at(i - 1).cell).plus;
  }
  return g.word.at(static_cast<std::size_t>(floor(u))).cell;
}

DiscreteTrace discrete_trace(const Complex& x, const DirectedPathPL& g) {
  validate_path(x, g);
  // Alternating sequence s_0, w_1, s_1, ..., w_n, s_n; position 2i is s_i.
  auto position = [](const Rational& u) -> std::size_t {
    const auto f = static_cast<std::size_t>(floor(u));
    return is_integer(u) ? 2 * f : 2 * f + 1;
  };
  auto entry = [&](std::size_t p) -> CellId {
    if (p % 2 == 1) return g.word[p / 2].cell;
    return p == 0 ? x.cell(g.word.front().cell).minus : x.cell(g.word[p / 2 - 1].cell).plus;
  };
  const std::size_t from = position(g.clock(0));
  const std::size_t to = position(g.clock(1));
  DiscreteTrace dt;
  dt.breakpoints.push_back(0);
  for (std::size_t p = from; p <= to; ++p) {
    dt.chain.push_back(entry(p));
    if (p == to) break;
    if (p % 2 == 0)
      dt.breakpoints.push_back(g.clock.last_below(Rational(p / 2)));
    else
      dt.breakpoints.push_back(g.clock.first_reaching(Rational(p / 2 + 1)));
  }
  dt.breakpoints.push_back(1);
  return dt;
}

std::optional<std::string> check_discrete_trace(const Complex& x, const DirectedPathPL& g, const DiscreteTrace& dt) {
  const auto& c = dt.chain;
  const auto& t = dt.breakpoints;
  const std::size_t n = c.size();
  if (n == 0) return "empty chain";
  if (t.size() != n + 1) return "expected " + std::to_string(n + 1) + " breakpoints";
  if (t.front() != 0 || t.back() != 1) return "breakpoints must run from 0 to 1";
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] < t[i - 1]) return "breakpoints decrease at " + std::to_string(i);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (c[i] == c[i + 1]) return "c_" + std::to_string(i + 1) + " = c_" + std::to_string(i + 2);
    if (!x.precedes(c[i], c[i + 1])) return x.name(c[i]) + " does not precede " + x.name(c[i + 1]);
  }

  // Probe the clock at every place where the cell under the path can change.
  std::vector<Rational> probes{0, 1};
  probes.insert(probes.end(), t.begin(), t.end());
  const auto& pts = g.clock.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    probes.push_back(pts[i].t);
    if (i + 1 == pts.size() || pts[i].v == pts[i + 1].v) continue;
    for (Integer k = ceil(pts[i].v); Rational(k) <= pts[i + 1].v; ++k)
      probes.push_back(pts[i].t + (Rational(k) - pts[i].v) * (pts[i + 1].t - pts[i].t) / (pts[i + 1].v - pts[i].v));
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  const std::size_t base = probes.size();
  for (std::size_t i = 0; i + 1 < base; ++i) probes.push_back((probes[i] + probes[i + 1]) / 2);

  auto closure_has = [&](CellId cell, CellId d) {
    if (cell == d) return true;
    const auto& info = x.cell(cell);
    if (info.dim == 0) return false;
    if (d == info.minus || d == info.plus) return true;
    for (const auto* path : {&info.lower, &info.upper})
      for (CellId e : *path)
        if (e == d || x.cell(e).minus == d || x.cell(e).plus == d) return true;
    return false;
  };
  for (const auto& p : probes) {
    const CellId d = cell_at(x, g, g.clock(p));
    for (std::size_t i = 1; i <= n; ++i) {
      if (p >= t[i - 1] && p <= t[i] && !closure_has(c[i - 1], d))
        return "gamma(" + to_string(p) + ") lies in " + x.name(d) + ", outside the closure of " + x.name(c[i - 1]);
      if (p > t[i - 1] && p < t[i] && d != c[i - 1])
        return "gamma(" + to_string(p) + ") lies in " + x.name(d) + " inside the interval of " + x.name(c[i - 1]);
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    const CellId d = cell_at(x, g, g.clock(t[i]));
    if (d != c[i - 1] && d != c[i]) return "gamma(t_" + std::to_string(i) + ") lies in " + x.name(d);
  }
  if (cell_at(x, g, g.clock(0)) != c.front()) return "gamma(0) is not in c_1";
  if (cell_at(x, g, g.clock(1)) != c.back()) return "gamma(1) is not in c_n";
  return std::nullopt;
}

Naturalization naturalize(const Complex& x, const DirectedPathPL& g) {
  validate_path(x, g);
  const Rational n(g.word.size());
  if (g.clock(0) != 0 || g.clock(1) != n)
    throw Error(ErrorKind::NotExecutionPath, "clock runs from " + to_string(g.clock(0)) + " to " + to_string(g.clock(1)) +
                                                 ", not from 0 to " + to_string(n));
  return {DirectedPathPL{g.word, PLMap::linear(0, 0, 1, n)}, Surjection(g.clock, 1, n)};
}

}  // namespace mds
