#include "mds/text_io.hpp"

#include "mds/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace mds {

namespace {

struct Line {
  std::size_t number;
  std::string text;  // comment stripped, trimmed
};

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, std::move(t)});
    start = end + 1;
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

class Reader {
 public:
  Reader(std::string_view source, const Line& line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, std::string(source_) + ":" + std::to_string(line_.number) + ": " + msg);
  }

  /// Splits "<keyword> <name> : <rest>".
  void header(std::string& keyword, std::string& name, std::string& rest) const {
    auto colon = line_.text.find(':');
    auto head = words(std::string_view(line_.text).substr(0, colon));
    if (head.size() != 2) fail("expected '<keyword> <name> : ...'");
    if (colon == std::string::npos) fail("missing ':'");
    keyword = head[0];
    name = head[1];
    rest = trim(std::string_view(line_.text).substr(colon + 1));
  }

  std::vector<std::string> names(std::string_view list) const {
    auto out = split(list, ',');
    for (auto& n : out)
      if (n.empty() || n.find_first_of(" \t") != std::string::npos) fail("bad name list '" + std::string(list) + "'");
    return out;
  }

 private:
  std::string_view source_;
  const Line& line_;
};

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- GCX

GlobularComplex parse_gcx(std::string_view text, std::string_view source) {
  GlobularComplex x;
  for (const auto& line : lines_of(text)) {
    Reader r(source, line);
    auto head = words(line.text);
    if (head[0] == "state") {
      if (head.size() != 2) r.fail("expected 'state <name>'");
      x.states.push_back(head[1]);
      continue;
    }
    std::string keyword, name, rest;
    r.header(keyword, name, rest);
    if (keyword == "edge") {
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) r.fail("expected 'edge <name> : <state> -> <state>'");
      auto src = words(rest.substr(0, arrow));
      auto tgt = words(rest.substr(arrow + 2));
      if (src.size() != 1 || tgt.size() != 1) r.fail("expected one state on each side of '->'");
      x.edges.push_back({name, src[0], tgt[0]});
    } else if (keyword == "cell2") {
      auto arrow = rest.find("=>");
      if (arrow == std::string::npos) r.fail("expected 'cell2 <name> : <path> => <path>'");
      x.cells2.push_back({name, r.names(rest.substr(0, arrow)), r.names(rest.substr(arrow + 2))});
    } else if (keyword.size() > 4 && keyword.substr(0, 4) == "cell" &&
               std::all_of(keyword.begin() + 4, keyword.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int dim = std::stoi(keyword.substr(4));
      if (dim < 3) r.fail("unsupported cell keyword '" + keyword + "'");
      x.cells_hi.push_back({name, dim, words(rest)});
    } else {
      r.fail("unknown keyword '" + keyword + "'");
    }
  }
  return x;
}

std::string write_gcx(const GlobularComplex& x) {
  std::string out;
  for (const auto& s : x.states) out += "state " + s + "\n";
  for (const auto& e : x.edges) out += "edge " + e.name + " : " + e.src + " -> " + e.tgt + "\n";
  for (const auto& c : x.cells2) out += "cell2 " + c.name + " : " + join(c.lower, ",") + " => " + join(c.upper, ",") + "\n";
  for (const auto& c : x.cells_hi) out += "cell" + std::to_string(c.dim) + " " + c.name + " : " + join(c.data, " ") + "\n";
  return out;
}

// ---------------------------------------------------------------- PCX

PrecubicalSet2 parse_pcx(std::string_view text, std::string_view source) {
  PrecubicalSet2 k;
  for (const auto& line : lines_of(text)) {
    Reader r(source, line);
    auto head = words(line.text);
    if (head[0] == "vertex") {
      if (head.size() != 2) r.fail("expected 'vertex <name>'");
      k.vertices.push_back(head[1]);
      continue;
    }
    std::string keyword, name, rest;
    r.header(keyword, name, rest);
    auto faces = words(rest);
    if (keyword == "cube1") {
      if (faces.size() != 2) r.fail("cube1 needs two vertices");
      k.edges.push_back({name, faces[0], faces[1]});
    } else if (keyword == "cube2") {
      if (faces.size() != 4) r.fail("cube2 needs four edges");
      k.squares.push_back({name, faces[0], faces[1], faces[2], faces[3]});
    } else {
      r.fail("unknown keyword '" + keyword + "'");
    }
  }
  return k;
}

std::string write_pcx(const PrecubicalSet2& k) {
  std::string out;
  for (const auto& v : k.vertices) out += "vertex " + v + "\n";
  for (const auto& e : k.edges) out += "cube1 " + e.name + " : " + e.src + " " + e.tgt + "\n";
  for (const auto& s : k.squares)
    out += "cube2 " + s.name + " : " + s.d10 + " " + s.d11 + " " + s.d20 + " " + s.d21 + "\n";
  return out;
}

// ---------------------------------------------------------------- CMAP

CellularMap parse_cmap(std::string_view text, const Complex& x, const Complex& y, std::string_view source) {
  CellularMap m;
  std::set<std::string> seen;
  for (const auto& line : lines_of(text)) {
    Reader r(source, line);
    auto head = words(line.text);
    if (head[0] != "map") r.fail("unknown keyword '" + head[0] + "'");
    auto arrow = line.text.find("->");
    if (arrow == std::string::npos) r.fail("expected 'map <cell> -> <cell>(,<cell>)*'");
    auto src = words(std::string_view(line.text).substr(3, arrow - 3));
    if (src.size() != 1) r.fail("expected one source cell");
    auto chain = r.names(std::string_view(line.text).substr(arrow + 2));
    auto id = x.find(src[0]);
    if (!id) r.fail("unknown source cell '" + src[0] + "'");
    if (!seen.insert(src[0]).second) r.fail("cell '" + src[0] + "' mapped twice");
    if (x.dim(*id) == 0) {
      if (chain.size() != 1) r.fail("state " + src[0] + " must go to a single state");
      m.states[src[0]] = chain[0];
    } else {
      m.cells[src[0]] = chain;
    }
  }
  for (CellId c = 0; c < x.size(); ++c) {
    const auto& n = x.name(c);
    if (seen.count(n) || !y.find(n)) continue;
    if (x.dim(c) == 0)
      m.states[n] = n;
    else
      m.cells[n] = {n};
  }
  return m;
}

std::string write_cmap(const CellularMap& m) {
  std::string out;
  for (const auto& [s, t] : m.states) out += "map " + s + " -> " + t + "\n";
  for (const auto& [c, chain] : m.cells) out += "map " + c + " -> " + join(chain, ",") + "\n";
  return out;
}

// ---------------------------------------------------------------- PL paths

DirectedPathPL parse_path(std::string_view text, const Complex& x, std::string_view source) {
  std::string all;
  std::size_t first_line = 0;
  for (const auto& line : lines_of(text)) {
    if (!first_line) first_line = line.number;
    all += line.text + " ";
  }
  Line joined{first_line ? first_line : 1, all};
  Reader r(source, joined);
  auto head = words(all);
  if (head.empty() || head[0] != "path") r.fail("expected 'path : ...'");
  auto colon = all.find(':');
  auto clock_at = all.find("clock:");
  if (colon == std::string::npos || clock_at == std::string::npos || clock_at < colon) r.fail("expected 'path : <cells> clock: <points>'");

  DirectedPathPL g;
  for (const auto& tok : words(std::string_view(all).substr(colon + 1, clock_at - colon - 1))) {
    auto at = tok.find('@');
    const std::string name = tok.substr(0, at);
    auto id = x.find(name);
    if (!id) r.fail("unknown cell '" + name + "'");
    PathLetter l{*id, Rational(1, 2)};
    if (at != std::string::npos) {
      try {
        l.z = parse_rational(tok.substr(at + 1));
      } catch (const Error& e) {
        r.fail(e.what());
      }
    }
    g.word.push_back(l);
  }

  std::vector<Breakpoint> pts;
  std::string_view rest = std::string_view(all).substr(clock_at + 6);
  std::size_t i = 0;
  while (i < rest.size()) {
    if (std::isspace(static_cast<unsigned char>(rest[i]))) {
      ++i;
      continue;
    }
    if (rest[i] != '(') r.fail("expected '(' in clock");
    auto close = rest.find(')', i);
    if (close == std::string_view::npos) r.fail("unclosed '(' in clock");
    auto parts = split(rest.substr(i + 1, close - i - 1), ',');
    if (parts.size() != 2) r.fail("clock points are (t,v) pairs");
    try {
      pts.push_back({parse_rational(parts[0]), parse_rational(parts[1])});
    } catch (const Error& e) {
      r.fail(e.what());
    }
    i = close + 1;
  }
  try {
    g.clock = PLMap(std::move(pts));
  } catch (const Error& e) {
    r.fail(e.what());
  }
  return g;
}

std::string write_path(const Complex& x, const DirectedPathPL& g) {
  std::string out = "path :";
  for (const auto& l : g.word) {
    out += " " + x.name(l.cell);
    if (x.dim(l.cell) == 2) out += "@" + to_string(l.z);
  }
  out += " clock:";
  for (const auto& b : g.clock.points()) out += " (" + to_string(b.t) + "," + to_string(b.v) + ")";
  return out + "\n";
}

}  // namespace mds
