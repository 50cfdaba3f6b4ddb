#include "mds/gcomplex.hpp"

#include "mds/error.hpp"

#include <algorithm>
#include <set>

namespace mds {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!head(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return head(c) || (c >= '0' && c <= '9'); });
}

}  // namespace

bool GlobularComplex::has_name(std::string_view name) const {
  auto eq = [&](const std::string& s) { return s == name; };
  return std::any_of(states.begin(), states.end(), eq) ||
         std::any_of(edges.begin(), edges.end(), [&](const EdgeDecl& e) { return e.name == name; }) ||
         std::any_of(cells2.begin(), cells2.end(), [&](const Cell2Decl& c) { return c.name == name; }) ||
         std::any_of(cells_hi.begin(), cells_hi.end(), [&](const CellHiDecl& c) { return c.name == name; });
}

std::string_view to_string(IssueKind kind) noexcept {
  switch (kind) {
    case IssueKind::BadName: return "BadName";
    case IssueKind::DuplicateName: return "DuplicateName";
    case IssueKind::UnknownCell: return "UnknownCell";
    case IssueKind::LoopEdge: return "LoopEdge";
    case IssueKind::EmptyPath: return "EmptyPath";
    case IssueKind::NotComposable: return "NotComposable";
    case IssueKind::BoundaryMismatch: return "BoundaryMismatch";
    case IssueKind::BadDimension: return "BadDimension";
  }
  return "Unknown";
}

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.kind == kind; });
}

std::string ValidationReport::text() const {
  std::string out;
  for (const auto& i : issues) {
    out += to_string(i.kind);
    out += ": ";
    out += i.message;
    out += '\n';
  }
  return out;
}

ValidationReport validate(const GlobularComplex& x) {
  ValidationReport report;
  auto add = [&](IssueKind k, std::string msg) { report.issues.push_back({k, std::move(msg)}); };

  std::set<std::string> seen;
  auto declare = [&](const std::string& name) {
    if (!valid_name(name)) add(IssueKind::BadName, "'" + name + "' is not a valid name");
    if (!seen.insert(name).second) add(IssueKind::DuplicateName, "'" + name + "' declared twice");
  };
  for (const auto& s : x.states) declare(s);
  for (const auto& e : x.edges) declare(e.name);
  for (const auto& c : x.cells2) declare(c.name);
  for (const auto& c : x.cells_hi) declare(c.name);

  std::set<std::string> states(x.states.begin(), x.states.end());
  std::map<std::string, const EdgeDecl*> edges;
  for (const auto& e : x.edges) {
    edges.emplace(e.name, &e);
    for (const auto* end : {&e.src, &e.tgt})
      if (!states.count(*end)) add(IssueKind::UnknownCell, "edge " + e.name + " refers to unknown state '" + *end + "'");
    if (e.src == e.tgt) add(IssueKind::LoopEdge, "edge " + e.name + " is a self-loop at " + e.src);
  }

  // Returns (source, target) of a well-formed edge-path.
  auto check_path = [&](const Cell2Decl& c, const std::vector<std::string>& path,
                        const char* which) -> std::optional<std::pair<std::string, std::string>> {
    if (path.empty()) {
      add(IssueKind::EmptyPath, "2-cell " + c.name + " has an empty " + which + " path");
      return std::nullopt;
    }
    bool ok = true;
    for (const auto& n : path) {
      if (!edges.count(n)) {
        add(IssueKind::UnknownCell, "2-cell " + c.name + " " + which + " path uses unknown edge '" + n + "'");
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (edges[path[i - 1]]->tgt != edges[path[i]]->src) {
        add(IssueKind::NotComposable,
            "2-cell " + c.name + " " + which + " path breaks between " + path[i - 1] + " and " + path[i]);
        return std::nullopt;
      }
    }
    return std::make_pair(edges[path.front()]->src, edges[path.back()]->tgt);
  };
  for (const auto& c : x.cells2) {
    auto lo = check_path(c, c.lower, "lower");
    auto up = check_path(c, c.upper, "upper");
    if (lo && up && *lo != *up)
      add(IssueKind::BoundaryMismatch, "2-cell " + c.name + " lower path runs " + lo->first + "->" + lo->second +
                                           " but upper path runs " + up->first + "->" + up->second);
  }
  for (const auto& c : x.cells_hi)
    if (c.dim < 3) add(IssueKind::BadDimension, "cell " + c.name + " declared with dimension " + std::to_string(c.dim));
  return report;
}

bool is_loop_free(const GlobularComplex& x) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < x.states.size(); ++i) idx.emplace(x.states[i], i);
  std::vector<std::vector<std::size_t>> out(x.states.size());
  std::vector<std::size_t> indeg(x.states.size(), 0);
  for (const auto& e : x.edges) {
    if (e.src == e.tgt) return false;
    auto s = idx.find(e.src);
    auto t = idx.find(e.tgt);
    if (s == idx.end() || t == idx.end()) continue;
    out[s->second].push_back(t->second);
    ++indeg[t->second];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < indeg.size(); ++i)
    if (indeg[i] == 0) ready.push_back(i);
  std::size_t done = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++done;
    for (auto w : out[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return done == x.states.size();
}

// ---------------------------------------------------------------- Complex

Complex Complex::build(GlobularComplex decl) {
  auto report = validate(decl);
  if (!report.ok()) {
    auto text = report.text();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    throw Error(ErrorKind::InvalidComplex, text);
  }
  Complex x;
  x.decl_ = std::move(decl);
  const auto& d = x.decl_;
  auto add = [&](CellInfo info) {
    x.index_.emplace(info.name, x.cells_.size());
    x.cells_.push_back(std::move(info));
  };
  for (const auto& s : d.states) add({s, 0, x.cells_.size(), x.cells_.size(), {}, {}});
  for (const auto& e : d.edges) {
    const CellId id = x.cells_.size();
    add({e.name, 1, x.index_.at(e.src), x.index_.at(e.tgt), {id}, {id}});
  }
  for (const auto& c : d.cells2) {
    CellInfo info{c.name, 2, kNoCell, kNoCell, {}, {}};
    for (const auto& n : c.lower) info.lower.push_back(x.index_.at(n));
    for (const auto& n : c.upper) info.upper.push_back(x.index_.at(n));
    info.minus = x.cells_[info.lower.front()].minus;
    info.plus = x.cells_[info.lower.back()].plus;
    add(std::move(info));
  }
  for (const auto& c : d.cells_hi) {
    add({c.name, c.dim, kNoCell, kNoCell, {}, {}});
    x.dimension_ = std::max(x.dimension_, c.dim);
  }

  const std::size_t n = x.cells_.size();
  x.by_name_.resize(n);
  for (CellId i = 0; i < n; ++i) x.by_name_[i] = i;
  std::sort(x.by_name_.begin(), x.by_name_.end(), [&](CellId a, CellId b) { return x.cells_[a].name < x.cells_[b].name; });

  x.letters_from_.assign(n, {});
  x.edges_from_.assign(n, {});
  x.successors_.assign(n, {});
  for (CellId c : x.by_name_) {
    const auto& info = x.cells_[c];
    if (info.dim == 1 || info.dim == 2) {
      x.letters_from_[info.minus].push_back(c);
      x.successors_[info.minus].push_back(c);
      x.dimension_ = std::max(x.dimension_, info.dim);
    }
    if (info.dim == 1) x.edges_from_[info.minus].push_back(c);
  }
  for (CellId c = 0; c < n; ++c)
    if (x.cells_[c].dim == 1 || x.cells_[c].dim == 2) x.successors_[c].push_back(x.cells_[c].plus);
  x.loop_free_ = mds::is_loop_free(x.decl_);
  return x;
}

std::optional<CellId> Complex::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CellId Complex::id(std::string_view name) const {
  auto c = find(name);
  if (!c) throw Error(ErrorKind::UnknownCell, "no cell named '" + std::string(name) + "'");
  return *c;
}

CellId Complex::state(std::string_view name) const {
  auto c = find(name);
  if (!c || cells_[*c].dim != 0) throw Error(ErrorKind::UnknownState, "no state named '" + std::string(name) + "'");
  return *c;
}

bool Complex::precedes(CellId c, CellId d) const {
  if (c == d) return false;
  const auto& ci = cells_.at(c);
  const auto& di = cells_.at(d);
  if (ci.dim > 2 || di.dim > 2) return false;
  return (di.dim >= 1 && c == di.minus) || (ci.dim >= 1 && ci.plus == d);
}

void require_computable(const Complex& x) {
  if (x.has_high_cells())
    throw Error(ErrorKind::UnsupportedDimension,
                "cell " + x.decl().cells_hi.front().name + " has dimension " + std::to_string(x.decl().cells_hi.front().dim));
  if (!x.is_loop_free()) throw Error(ErrorKind::NotLoopFree, "the 1-skeleton has a directed cycle");
}

// ---------------------------------------------------------------- precubical

GlobularComplex import_precubical(const PrecubicalSet2& k) {
  GlobularComplex x;
  std::map<std::string, const PcxEdge*> edges;
  std::set<std::string> vertices(k.vertices.begin(), k.vertices.end());
  x.states = k.vertices;
  for (const auto& e : k.edges) {
    if (!vertices.count(e.src) || !vertices.count(e.tgt))
      throw Error(ErrorKind::InvalidFaces, "cube1 " + e.name + " has a face that is not a vertex");
    edges.emplace(e.name, &e);
    x.edges.push_back({e.name, e.src, e.tgt});
  }
  for (const auto& s : k.squares) {
    const PcxEdge* f[4];
    const std::string* names[4] = {&s.d10, &s.d11, &s.d20, &s.d21};
    for (int i = 0; i < 4; ++i) {
      auto it = edges.find(*names[i]);
      if (it == edges.end()) throw Error(ErrorKind::InvalidFaces, "cube2 " + s.name + " has unknown face '" + *names[i] + "'");
      f[i] = it->second;
    }
    const auto& [e10, e11, e20, e21] = f;
    // d_i^a d_j^b = d_{j-1}^b d_i^a for i < j, spelled out on the four corners.
    auto corner = [&](const std::string& a, const std::string& b, const char* which) {
      if (a != b) throw Error(ErrorKind::InvalidFaces, "cube2 " + s.name + ": corner " + which + " is " + a + " on one face and " + b + " on the other");
    };
    corner(e20->src, e10->src, "00");
    corner(e21->src, e10->tgt, "01");
    corner(e20->tgt, e11->src, "10");
    corner(e21->tgt, e11->tgt, "11");
    x.cells2.push_back({s.name, {e10->name, e21->name}, {e20->name, e11->name}});
  }
  auto report = validate(x);
  if (!report.ok()) throw Error(ErrorKind::InvalidFaces, report.issues.front().message);
  return x;
}

// ---------------------------------------------------------------- subdivision

namespace {

class FreshNames {
 public:
  explicit FreshNames(const GlobularComplex& x) : x_(x) {}

  std::string operator()(std::string base) {
    while (x_.has_name(base) || taken_.count(base)) base += '_';
    taken_.insert(base);
    return base;
  }

 private:
  const GlobularComplex& x_;
  std::set<std::string> taken_;
};

std::map<std::string, std::string> identity_refinement(const GlobularComplex& y) {
  std::map<std::string, std::string> r;
  for (const auto& s : y.states) r[s] = s;
  for (const auto& e : y.edges) r[e.name] = e.name;
  for (const auto& c : y.cells2) r[c.name] = c.name;
  for (const auto& c : y.cells_hi) r[c.name] = c.name;
  return r;
}

}  // namespace

Subdivision subdivide_edge(const GlobularComplex& x, std::string_view edge) {
  auto it = std::find_if(x.edges.begin(), x.edges.end(), [&](const EdgeDecl& e) { return e.name == edge; });
  if (it == x.edges.end()) throw Error(ErrorKind::UnknownCell, "no edge named '" + std::string(edge) + "'");
  const EdgeDecl old = *it;
  FreshNames fresh(x);
  const std::string e1 = fresh(old.name + "_1");
  const std::string e2 = fresh(old.name + "_2");
  const std::string w = fresh(old.name + "_w");

  Subdivision out{x, {}};
  auto& y = out.complex;
  y.states.push_back(w);
  auto pos = y.edges.begin() + (it - x.edges.begin());
  *pos = {e1, old.src, w};
  y.edges.insert(pos + 1, EdgeDecl{e2, w, old.tgt});
  auto substitute = [&](std::vector<std::string>& path) {
    std::vector<std::string> next;
    for (auto& n : path) {
      if (n == old.name) {
        next.push_back(e1);
        next.push_back(e2);
      } else {
        next.push_back(n);
      }
    }
    path = std::move(next);
  };
  for (auto& c : y.cells2) {
    substitute(c.lower);
    substitute(c.upper);
  }
  out.refinement = identity_refinement(y);
  out.refinement[e1] = old.name;
  out.refinement[e2] = old.name;
  out.refinement[w] = old.name;
  return out;
}

Subdivision subdivide_2cell(const GlobularComplex& x, std::string_view cell, int chord) {
  auto it = std::find_if(x.cells2.begin(), x.cells2.end(), [&](const Cell2Decl& c) { return c.name == cell; });
  if (it == x.cells2.end()) throw Error(ErrorKind::UnknownCell, "no 2-cell named '" + std::string(cell) + "'");
  if (chord < 1) throw Error(ErrorKind::BadChordSpec, "a chord needs at least one edge, got " + std::to_string(chord));
  const Cell2Decl old = *it;
  auto edge_of = [&](const std::string& n) -> const EdgeDecl& {
    auto e = std::find_if(x.edges.begin(), x.edges.end(), [&](const EdgeDecl& d) { return d.name == n; });
    if (e == x.edges.end()) throw Error(ErrorKind::UnknownCell, "2-cell " + old.name + " uses unknown edge '" + n + "'");
    return *e;
  };
  const std::string minus = edge_of(old.lower.front()).src;
  const std::string plus = edge_of(old.lower.back()).tgt;

  FreshNames fresh(x);
  std::vector<std::string> chord_edges;
  std::vector<std::string> chord_states;
  for (int i = 1; i <= chord; ++i) chord_edges.push_back(fresh(old.name + "_m" + std::to_string(i)));
  for (int i = 1; i < chord; ++i) chord_states.push_back(fresh(old.name + "_p" + std::to_string(i)));
  const std::string top = fresh(old.name + "_top");
  const std::string bot = fresh(old.name + "_bot");

  Subdivision out{x, {}};
  auto& y = out.complex;
  for (const auto& s : chord_states) y.states.push_back(s);
  for (int i = 0; i < chord; ++i) {
    const std::string& src = i == 0 ? minus : chord_states[i - 1];
    const std::string& tgt = i + 1 == chord ? plus : chord_states[i];
    y.edges.push_back({chord_edges[i], src, tgt});
  }
  auto pos = y.cells2.begin() + (it - x.cells2.begin());
  *pos = {top, old.lower, chord_edges};
  y.cells2.insert(pos + 1, Cell2Decl{bot, chord_edges, old.upper});

  out.refinement = identity_refinement(y);
  for (const auto& n : chord_edges) out.refinement[n] = old.name;
  for (const auto& n : chord_states) out.refinement[n] = old.name;
  out.refinement[top] = old.name;
  out.refinement[bot] = old.name;
  return out;
}

// ---------------------------------------------------------------- cellular maps

ValidationReport validate_cellular_map(const CellularMap& m, const Complex& x, const Complex& y) {
  ValidationReport report;
  auto add = [&](IssueKind k, std::string msg) { report.issues.push_back({k, std::move(msg)}); };

  for (const auto& [src, dst] : m.states) {
    auto s = x.find(src);
    if (!s || x.dim(*s) != 0) add(IssueKind::UnknownCell, "map source '" + src + "' is not a state of the source complex");
    auto t = y.find(dst);
    if (!t || y.dim(*t) != 0) add(IssueKind::UnknownCell, "state " + src + " is sent to '" + dst + "', not a target state");
  }
  for (const auto& [src, chain] : m.cells) {
    auto s = x.find(src);
    if (!s || x.dim(*s) == 0) add(IssueKind::UnknownCell, "map source '" + src + "' is not a cell of the source complex");
  }

  for (CellId c = 0; c < x.size(); ++c) {
    const auto& info = x.cell(c);
    if (info.dim == 0) {
      if (!m.states.count(info.name)) add(IssueKind::UnknownCell, "state " + info.name + " has no image");
      continue;
    }
    auto it = m.cells.find(info.name);
    if (it == m.cells.end() || it->second.empty()) {
      add(IssueKind::EmptyPath, "cell " + info.name + " has no image chain");
      continue;
    }
    std::vector<CellId> chain;
    bool known = true;
    for (const auto& n : it->second) {
      auto t = y.find(n);
      if (!t) {
        add(IssueKind::UnknownCell, "cell " + info.name + " is sent through unknown cell '" + n + "'");
        known = false;
      } else {
        chain.push_back(*t);
      }
    }
    if (!known) continue;
    bool chained = true;
    for (std::size_t i = 1; i < chain.size(); ++i) {
      if (!y.precedes(chain[i - 1], chain[i])) {
        add(IssueKind::NotComposable, "image of " + info.name + " is not a chain at " + y.name(chain[i - 1]) + ", " +
                                          y.name(chain[i]));
        chained = false;
      }
    }
    if (!chained || info.dim > 2) continue;
    const CellId first = y.dim(chain.front()) == 0 ? chain.front() : y.cell(chain.front()).minus;
    const CellId last = y.dim(chain.back()) == 0 ? chain.back() : y.cell(chain.back()).plus;
    auto expect = [&](CellId state) -> std::string {
      auto s = m.states.find(x.name(state));
      return s == m.states.end() ? std::string() : s->second;
    };
    if (y.name(first) != expect(info.minus))
      add(IssueKind::BoundaryMismatch, "image of " + info.name + " starts at " + y.name(first) + ", expected " +
                                           expect(info.minus));
    if (y.name(last) != expect(info.plus))
      add(IssueKind::BoundaryMismatch, "image of " + info.name + " ends at " + y.name(last) + ", expected " +
                                           expect(info.plus));
  }
  return report;
}

CellularMap identity_map(const Complex& x) {
  CellularMap m;
  for (CellId c = 0; c < x.size(); ++c) {
    if (x.dim(c) == 0)
      m.states[x.name(c)] = x.name(c);
    else
      m.cells[x.name(c)] = {x.name(c)};
  }
  return m;
}

}  // namespace mds
