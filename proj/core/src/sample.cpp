#include "mds/sample.hpp"

#include "mds/error.hpp"

#include <algorithm>

namespace mds {

int Sampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

Rational Sampler::positive(int max_den) {
  const int d = uniform(1, max_den);
  return Rational(uniform(1, d), d);
}

Rational Sampler::value(int span, int max_den) {
  const int d = uniform(1, max_den);
  return Rational(uniform(-span * d, span * d), d);
}

std::vector<Rational> Sampler::partition(const Rational& len, int pieces) {
  std::vector<Rational> weights;
  Rational total = 0;
  for (int i = 0; i < pieces; ++i) {
    weights.push_back(positive());
    total += weights.back();
  }
  std::vector<Rational> xs{0};
  Rational acc = 0;
  for (const auto& w : weights) {
    acc += w;
    xs.push_back(acc * len / total);
  }
  return xs;
}

PLMap Sampler::surjection(const Rational& from, const Rational& to, bool allow_flat) {
  if (from == 0) return PLMap({{0, 0}});
  const int pieces = uniform(1, 4);
  auto ts = partition(from, pieces);
  std::vector<Rational> inc;
  Rational total = 0;
  for (int i = 0; i < pieces; ++i) {
    inc.push_back(allow_flat && uniform(0, 3) == 0 ? Rational(0) : positive());
    total += inc.back();
  }
  if (total == 0) {
    inc.back() = 1;
    total = 1;
  }
  std::vector<Breakpoint> pts{{0, 0}};
  Rational acc = 0;
  for (int i = 0; i < pieces; ++i) {
    acc += inc[i];
    pts.push_back({ts[i + 1], acc * to / total});
  }
  return PLMap(std::move(pts));
}

PLMap Sampler::clock(const Rational& bound) {
  const int pieces = uniform(1, 4);
  auto ts = partition(1, pieces);
  std::vector<Rational> vs;
  for (int i = 0; i <= pieces; ++i) {
    const int d = uniform(1, 6);
    vs.push_back(Rational(uniform(0, d), d) * bound);
  }
  std::sort(vs.begin(), vs.end());
  std::vector<Breakpoint> pts;
  for (int i = 0; i <= pieces; ++i) pts.push_back({ts[i], vs[i]});
  return PLMap(std::move(pts));
}

MoorePath Sampler::moore_path(const Rational& len, const std::vector<Rational>& start) {
  if (len == 0) return MoorePath::constant(0, start);
  std::vector<PLMap> comps;
  for (const auto& s : start) {
    const int pieces = uniform(1, 3);
    auto ts = partition(len, pieces);
    std::vector<Breakpoint> pts{{0, s}};
    for (int i = 1; i <= pieces; ++i) pts.push_back({ts[i], value()});
    comps.emplace_back(std::move(pts));
  }
  return MoorePath(len, std::move(comps));
}

std::vector<WordPiece> Sampler::word(std::size_t n) {
  std::vector<WordPiece> out;
  auto shares = partition(1, static_cast<int>(n));
  Rational at = value();
  for (std::size_t i = 0; i < n; ++i) {
    PLMap c = clock(1);
    MoorePath p = moore_path(1, {0});
    const Rational offset = at - p(c(0))[0];
    p = MoorePath(1, {p.components()[0].shifted(0, offset)});
    at = p(c(1))[0];
    out.push_back({p, Clock(c, 1), shares[i + 1] - shares[i]});
  }
  return out;
}

DirectedPathPL Sampler::directed_path(const Complex& x, int max_len, bool execution) {
  std::vector<CellId> starts;
  for (CellId c = 0; c < x.size(); ++c)
    if (x.dim(c) == 0 && !x.letters_from(c).empty()) starts.push_back(c);
  if (starts.empty()) throw Error(ErrorKind::NoTrace, "complex has no cell of dimension >= 1");
  CellId at = starts[static_cast<std::size_t>(uniform(0, static_cast<int>(starts.size()) - 1))];
  DirectedPathPL g;
  const int len = uniform(1, max_len);
  for (int i = 0; i < len && !x.letters_from(at).empty(); ++i) {
    const auto& next = x.letters_from(at);
    CellId c = next[static_cast<std::size_t>(uniform(0, static_cast<int>(next.size()) - 1))];
    g.word.push_back({c, Rational(uniform(1, 4), 5)});
    at = x.cell(c).plus;
  }
  const Rational n(static_cast<long long>(g.word.size()));
  g.clock = execution ? surjection(1, n) : clock(n);
  return g;
}

}  // namespace mds
