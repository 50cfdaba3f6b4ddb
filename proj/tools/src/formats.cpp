#include "formats.hpp"

#include "mds/error.hpp"

#include <fstream>
#include <sstream>

namespace mds::cli {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

Breakpoint parse_point(const std::string& tok, std::string_view source, std::size_t line) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')') fail(source, line, "expected (t,v), got '" + tok + "'");
  auto comma = tok.find(',');
  if (comma == std::string::npos) fail(source, line, "expected (t,v), got '" + tok + "'");
  return {parse_rational(tok.substr(1, comma - 1)), parse_rational(tok.substr(comma + 1, tok.size() - comma - 2))};
}

}  // namespace

WordFile parse_word_file(std::string_view text, std::string_view source) {
  WordFile out;
  bool have_clock = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokens(strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] == "clock") {
      std::vector<Breakpoint> pts;
      for (std::size_t i = 1; i < toks.size(); ++i) pts.push_back(parse_point(toks[i], source, lineno));
      if (pts.empty()) fail(source, lineno, "clock without points");
      out.phi = Clock(PLMap(std::move(pts)), 1);
      have_clock = true;
      continue;
    }
    if (toks[0] != "piece" || toks.size() < 2) fail(source, lineno, "expected 'piece' or 'clock'");
    Rational share = parse_rational(toks[1]);
    std::vector<PLMap> comps;
    std::vector<Breakpoint> clock_pts;
    std::vector<Breakpoint>* cur = nullptr;
    std::vector<std::vector<Breakpoint>> paths;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      if (toks[i] == "path") {
        paths.emplace_back();
        cur = &paths.back();
      } else if (toks[i] == "clock") {
        cur = &clock_pts;
      } else if (cur) {
        cur->push_back(parse_point(toks[i], source, lineno));
      } else {
        fail(source, lineno, "point before 'path' or 'clock'");
      }
    }
    if (paths.empty()) fail(source, lineno, "piece without path");
    for (auto& p : paths) comps.emplace_back(std::move(p));
    PLMap clock = clock_pts.empty() ? PLMap::identity(0, 1) : PLMap(std::move(clock_pts));
    out.word.push_back({MoorePath(1, std::move(comps)), Clock(std::move(clock), 1), std::move(share)});
  }
  if (out.word.empty()) fail(source, lineno, "no pieces");
  if (!have_clock) fail(source, lineno, "missing outer clock");
  return out;
}

std::string points_text(const PLMap& f) {
  std::string out;
  for (const auto& b : f.points()) out += (out.empty() ? "(" : " (") + to_string(b.t) + "," + to_string(b.v) + ")";
  return out;
}

std::string piece_text(const WordPiece& p) {
  std::string out = "piece " + to_string(p.share);
  for (const auto& c : p.path.components()) out += " path " + points_text(c);
  return out + " clock " + points_text(p.clock.map());
}

IntMatrix parse_matrix(std::string_view text, std::string_view source) {
  std::vector<std::vector<long long>> rows;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokens(strip_comment(raw));
    if (toks.empty()) continue;
    std::vector<long long> row;
    for (const auto& t : toks) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(t, &used));
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        fail(source, lineno, "bad integer '" + t + "'");
      }
    }
    if (!rows.empty() && row.size() != rows[0].size()) fail(source, lineno, "ragged row");
    rows.push_back(std::move(row));
  }
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mds::cli
