#include "mds/natsys.hpp"

#include "mds/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace mds {

bool chain_less(const Complex& x, const Chain& a, const Chain& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return x.name(a[i]) < x.name(b[i]);
  return false;
}

TraceCategory trace_category(const Complex& x, std::size_t cap) {
  require_computable(x);
  TraceCategory t{&x, {}};
  Chain chain;
  std::function<void()> grow = [&] {
    if (t.traces.size() >= cap) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " discrete traces");
    t.traces.push_back(chain);
    for (CellId d : x.successors(chain.back())) {
      chain.push_back(d);
      grow();
      chain.pop_back();
    }
  };
  for (CellId c : x.by_name()) {
    chain = {c};
    grow();
  }
  std::sort(t.traces.begin(), t.traces.end(), [&](const Chain& a, const Chain& b) { return chain_less(x, a, b); });
  return t;
}

FactCategory factorization_category(const TraceCategory& t) {
  const Complex& x = *t.complex;
  FactCategory f{&x, t.traces, {}, {}};
  for (std::size_t i = 0; i < f.objects.size(); ++i) f.index.emplace(f.objects[i], i);

  std::vector<std::vector<CellId>> preds(x.size());
  for (CellId c : x.by_name())
    for (CellId d : x.successors(c)) preds[d].push_back(c);

  for (std::size_t i = 0; i < f.objects.size(); ++i) {
    const Chain& c = f.objects[i];
    std::vector<Extension> left, right;
    for (CellId p : preds[c.front()]) {
      Chain longer{p};
      longer.insert(longer.end(), c.begin(), c.end());
      left.push_back({i, f.index.at(longer), Side::Left, p});
    }
    for (CellId s : x.successors(c.back())) {
      Chain longer = c;
      longer.push_back(s);
      right.push_back({i, f.index.at(longer), Side::Right, s});
    }
    auto by_target = [](const Extension& a, const Extension& b) { return a.to < b.to; };
    std::sort(left.begin(), left.end(), by_target);
    std::sort(right.begin(), right.end(), by_target);
    f.extensions.insert(f.extensions.end(), left.begin(), left.end());
    f.extensions.insert(f.extensions.end(), right.begin(), right.end());
  }
  return f;
}

IndexCategory FactCategory::index_category() const {
  IndexCategory ic;
  for (const auto& c : objects) ic.add_object(chain_text(*complex, c));
  for (const auto& e : extensions)
    ic.add_generator(e.from, e.to, std::string(e.side == Side::Left ? "left:" : "right:") + complex->name(e.cell));
  return ic;
}

namespace {

MappedCube keep_all(const Complex& x, Word w) {
  MappedCube m;
  const auto k = track_positions(x, w).size();
  for (std::size_t j = 0; j < k; ++j) m.coords.push_back(static_cast<int>(j));
  m.word = std::move(w);
  return m;
}

CubicalMap same_words(const TraceSpaceValue& src, const TraceSpaceValue& dst) {
  const Complex& x = src.base.complex();
  return tabulate(src, dst, [&](const Word& w) { return keep_all(x, w); }, MappedCube{true, {}, {}});
}

CubicalMap extension_cubical(const Complex& x, const Chain& c, const Extension& e, const TraceSpaceValue& src,
                             const TraceSpaceValue& dst, bool upper) {
  const bool left = e.side == Side::Left;
  const CellId end = left ? c.front() : c.back();
  const CellId far = left ? c.back() : c.front();
  const auto& info = x.cell(end);
  // the new cell is a boundary state of the end cell: walk through the end cell
  if (info.dim >= 1 && (left ? info.minus : info.plus) == e.cell)
    return extend_map(src, dst, e.side, representative(x, end, upper));
  // the new cell is bounded by the end state: same trace space
  if (x.dim(e.cell) >= 1 && (left ? x.cell(e.cell).plus : x.cell(e.cell).minus) == end) {
    if (e.cell == far) throw Error(ErrorKind::NotLoopFree, "extension by " + x.name(e.cell) + " closes a loop");
    return same_words(src, dst);
  }
  throw Error(ErrorKind::NotFunctorial, x.name(e.cell) + " does not extend " + chain_text(x, c));
}

bool cube_bijection(const CubicalMap& f, const TraceSpaceValue& src, const TraceSpaceValue& dst) {
  if (src.dimension() != dst.dimension() || src.vertex_count() != dst.vertex_count()) return false;
  for (int k = 0; k <= src.dimension(); ++k) {
    const std::size_t n = k == 0 ? src.vertex_count() : src.base.count(k);
    const std::size_t m = k == 0 ? dst.vertex_count() : dst.base.count(k);
    if (n != m) return false;
    std::vector<bool> hit(m, false);
    for (const auto& img : f.images.at(k)) {
      if (img.degree() != k || hit.at(img.cube)) return false;
      hit[img.cube] = true;
    }
  }
  return true;
}

/// Edge word along the cells of a chain piece, 2-cells replaced by their lower path.
Word edges_along(const Complex& x, const Chain& piece, std::size_t from, std::size_t to) {
  Word w;
  for (std::size_t i = from; i < to; ++i) {
    const CellId c = piece[i];
    if (x.dim(c) == 1) w.push_back(c);
    if (x.dim(c) == 2) w.insert(w.end(), x.cell(c).lower.begin(), x.cell(c).lower.end());
  }
  return w;
}

std::size_t object_of(const NaturalSystem& ns, const Chain& c, const Chain& from) {
  auto it = ns.fact.index.find(c);
  if (it == ns.fact.index.end())
    throw Error(ErrorKind::NotFunctorial, "image of " + chain_text(*ns.fact.complex, from) + " is not a discrete trace");
  return it->second;
}

void check_chain(const Complex& y, const Chain& image, const std::string& what) {
  for (std::size_t i = 1; i < image.size(); ++i)
    if (!y.precedes(image[i - 1], image[i]))
      throw Error(ErrorKind::NotFunctorial, "image of " + what + " breaks at " + y.name(image[i - 1]) + ", " +
                                                y.name(image[i]));
}

void check_functor(const NaturalSystem& src, const NaturalSystem& dst, const DiagramMap& m) {
  for (const auto& e : src.fact.extensions)
    if (!dst.diagram.index.has_morphism(m.on_objects[e.from], m.on_objects[e.to]))
      throw Error(ErrorKind::NotFunctorial, "extension " + src.diagram.index.label(e.from) + " -> " +
                                                src.diagram.index.label(e.to) + " has no image");
}

}  // namespace

NaturalSystem natural_system(const Complex& x, const Valuation& val, const NatSysOptions& opts) {
  NaturalSystem ns;
  ns.complex = &x;
  ns.fact = factorization_category(trace_category(x, opts.cap));
  const auto& objects = ns.fact.objects;

  std::map<std::pair<CellId, CellId>, std::size_t> pairs;
  for (const auto& c : objects) {
    auto [it, fresh] = pairs.emplace(std::make_pair(c.front(), c.back()), pairs.size());
    ns.space_of.push_back(it->second);
  }
  std::vector<std::pair<CellId, CellId>> ends(pairs.size());
  for (const auto& [key, k] : pairs) ends[k] = key;
  ns.spaces.resize(ends.size());
  ns.valued.resize(ends.size());
  detail::parallel_for(ends.size(), opts.jobs, [&](std::size_t k) {
    const auto [c, d] = ends[k];
    ns.spaces[k] = opts.carrier_values ? value_between_carriers(x, c, d, opts.cap) : trace_space(x, c, d, opts.cap);
    ns.valued[k] = valuate(ns.spaces[k], val);
  });

  const auto& ext = ns.fact.extensions;
  ns.extension_maps.resize(ext.size());
  std::vector<ValuedMap> maps(ext.size());
  detail::parallel_for(ext.size(), opts.jobs, [&](std::size_t k) {
    const auto& e = ext[k];
    ns.extension_maps[k] =
        extension_cubical(x, objects[e.from], e, ns.space(e.from), ns.space(e.to), opts.upper_representatives);
    maps[k] = induced(ns.extension_maps[k], ns.space(e.from), ns.valued_at(e.from), ns.space(e.to), ns.valued_at(e.to),
                      val);
  });

  ns.diagram.index = ns.fact.index_category();
  ns.diagram.valuation = val;
  for (std::size_t i = 0; i < objects.size(); ++i) ns.diagram.values.push_back(ns.valued_at(i).space);
  ns.diagram.generator_maps = std::move(maps);
  ns.diagram.complete();
  return ns;
}

TraceSpaceValue value_between_carriers(const Complex& x, CellId p, CellId q, std::size_t cap) {
  require_computable(x);
  const auto& pi = x.cell(p);
  const auto& qi = x.cell(q);
  if (p == q && pi.dim > 0) return {path_complex(x, pi.plus, pi.minus, cap), true};
  const CellId alpha = pi.dim == 0 ? p : pi.plus;
  const CellId beta = qi.dim == 0 ? q : qi.minus;
  TraceSpaceValue v{path_complex(x, alpha, beta, cap), false};
  if (v.base.count(0) == 0)
    throw Error(ErrorKind::NoTrace, "no directed path from inside " + pi.name + " to inside " + qi.name);
  return v;
}

PathValueReport nt_value_of_path(const Complex& x, const DirectedPathPL& g, const Valuation& val, std::size_t cap) {
  validate_path(x, g);
  PathValueReport r;
  r.trace = discrete_trace(x, g);
  const CellId p = cell_at(x, g, g.clock(Rational(0)));
  const CellId q = cell_at(x, g, g.clock(Rational(1)));
  r.by_carriers = valuate(value_between_carriers(x, p, q, cap), val).space;
  r.by_trace = valuate(trace_space(x, r.trace.chain.front(), r.trace.chain.back(), cap), val).space;
  r.agree = r.by_carriers == r.by_trace;
  return r;
}

DiagramMap crush_induced_map(const CellularMap& m, const NaturalSystem& src, const NaturalSystem& dst) {
  const Complex& a = *src.complex;
  const Complex& b = *dst.complex;
  if (auto report = validate_cellular_map(m, a, b); !report.ok())
    throw Error(ErrorKind::NotFunctorial, "invalid cellular map: " + report.text());

  std::vector<Chain> image(a.size()), open(a.size());
  for (CellId c = 0; c < a.size(); ++c) {
    if (a.dim(c) == 0) {
      image[c] = open[c] = {b.state(m.states.at(a.name(c)))};
      continue;
    }
    for (const auto& n : m.cells.at(a.name(c))) image[c].push_back(b.id(n));
    Chain o = image[c];
    const CellId from = b.state(m.states.at(a.name(a.cell(c).minus)));
    const CellId to = b.state(m.states.at(a.name(a.cell(c).plus)));
    if (o.size() > 1 && o.front() == from) o.erase(o.begin());
    if (o.size() > 1 && o.back() == to) o.pop_back();
    open[c] = std::move(o);
  }

  DiagramMap out;
  const auto& objects = src.fact.objects;
  for (const auto& c : objects) {
    Chain f;
    for (CellId cell : c)
      for (CellId d : open[cell])
        if (f.empty() || f.back() != d) f.push_back(d);
    check_chain(b, f, chain_text(a, c));
    out.on_objects.push_back(object_of(dst, f, c));
  }
  check_functor(src, dst, out);

  const Valuation& val = src.diagram.valuation;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Chain& c = objects[i];
    const TraceSpaceValue& s = src.space(i);
    const TraceSpaceValue& t = dst.space(out.on_objects[i]);
    Word prefix, suffix;
    if (a.dim(c.front()) >= 1) prefix = edges_along(b, open[c.front()], 1, open[c.front()].size());
    if (a.dim(c.back()) >= 1) suffix = edges_along(b, open[c.back()], 0, open[c.back()].size() - 1);

    auto on_word = [&](const Word& w) {
      MappedCube mc;
      if (t.extra_point) {
        mc.extra = true;
        mc.coords.assign(track_positions(a, w).size(), -1);
        return mc;
      }
      mc.word = prefix;
      int next = 0;
      for (CellId l : w) {
        const Chain& im = image[l];
        const auto tracks = std::count_if(im.begin(), im.end(), [&](CellId d) { return b.dim(d) == 2; });
        if (tracks > 1 || (a.dim(l) == 1 && tracks > 0))
          throw Error(ErrorKind::NotCubical, a.name(l) + " is sent across more than its dimension");
        if (a.dim(l) == 2) mc.coords.push_back(tracks ? next++ : -1);
        for (CellId d : im) {
          if (b.dim(d) == 1 || (b.dim(d) == 2 && a.dim(l) == 2)) mc.word.push_back(d);
        }
      }
      mc.word.insert(mc.word.end(), suffix.begin(), suffix.end());
      return mc;
    };
    MappedCube on_extra;
    if (s.extra_point) {
      const Chain& o = open[c.front()];
      if (o.size() == 1 && b.dim(o[0]) >= 1)
        on_extra.extra = true;
      else
        on_extra.word = edges_along(b, o, 1, o.size() > 0 ? o.size() - 1 : 0);
    }
    CubicalMap cm = tabulate(s, t, on_word, on_extra);
    out.strict.push_back(cube_bijection(cm, s, t));
    out.components.push_back(induced(cm, s, src.valued_at(i), t, dst.valued_at(out.on_objects[i]), val));
  }
  return out;
}

DiagramMap refinement_map(const Subdivision& sub, const NaturalSystem& fine, const NaturalSystem& coarse) {
  const Complex& y = *fine.complex;
  const Complex& x = *coarse.complex;
  std::vector<CellId> coarse_of(y.size());
  for (CellId c = 0; c < y.size(); ++c) {
    auto it = sub.refinement.find(y.name(c));
    if (it == sub.refinement.end()) throw Error(ErrorKind::UnknownCell, "no coarse cell for " + y.name(c));
    coarse_of[c] = x.id(it->second);
  }
  auto inside = [&](CellId fine_cell, CellId c) { return coarse_of[fine_cell] == c && x.name(c) != y.name(fine_cell); };
  // a fine 2-cell whose lower path runs inside its coarse cell lies on the upper side
  auto upper_half = [&](CellId f) {
    const auto& lower = y.cell(f).lower;
    return std::all_of(lower.begin(), lower.end(), [&](CellId e) { return coarse_of[e] == coarse_of[f]; });
  };

  DiagramMap out;
  const auto& objects = fine.fact.objects;
  for (const auto& c : objects) {
    Chain f;
    for (CellId cell : c)
      if (f.empty() || f.back() != coarse_of[cell]) f.push_back(coarse_of[cell]);
    check_chain(x, f, chain_text(y, c));
    out.on_objects.push_back(object_of(coarse, f, c));
  }
  check_functor(fine, coarse, out);

  const Valuation& val = fine.diagram.valuation;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const TraceSpaceValue& s = fine.space(i);
    const TraceSpaceValue& t = coarse.space(out.on_objects[i]);
    const Chain& fc = coarse.fact.objects[out.on_objects[i]];

    auto on_word = [&](const Word& w) {
      MappedCube mc;
      if (t.extra_point) {
        mc.extra = true;
        mc.coords.assign(track_positions(y, w).size(), -1);
        return mc;
      }
      struct Run {
        CellId cell;
        std::size_t first, last;
      };
      std::vector<Run> runs;
      for (std::size_t p = 0; p < w.size(); ++p) {
        if (!runs.empty() && runs.back().cell == coarse_of[w[p]] && inside(w[p], coarse_of[w[p]]))
          runs.back().last = p + 1;
        else
          runs.push_back({coarse_of[w[p]], p, p + 1});
      }
      std::vector<bool> drop(runs.size(), false);
      if (!runs.empty() && x.dim(fc.front()) >= 1 && runs.front().cell == fc.front()) drop.front() = true;
      if (!runs.empty() && x.dim(fc.back()) >= 1 && runs.back().cell == fc.back()) drop.back() = true;
      int next = 0;
      for (std::size_t r = 0; r < runs.size(); ++r) {
        const Run& run = runs[r];
        std::optional<CellId> track;
        for (std::size_t p = run.first; p < run.last; ++p)
          if (y.dim(w[p]) == 2) track = w[p];
        const bool kept = track && !drop[r] && (x.dim(run.cell) == 2) &&
                          (y.name(*track) == x.name(run.cell) || upper_half(*track));
        if (track) mc.coords.push_back(kept ? next++ : -1);
        if (drop[r]) continue;
        if (x.dim(run.cell) == 1 || kept)
          mc.word.push_back(run.cell);
        else
          mc.word.insert(mc.word.end(), x.cell(run.cell).lower.begin(), x.cell(run.cell).lower.end());
      }
      return mc;
    };
    CubicalMap cm = tabulate(s, t, on_word, MappedCube{true, {}, {}});
    out.strict.push_back(cube_bijection(cm, s, t));
    out.components.push_back(induced(cm, s, fine.valued_at(i), t, coarse.valued_at(out.on_objects[i]), val));
  }
  return out;
}

Comparison dt_comparison(const Complex& x, const Valuation& val, const NatSysOptions& opts) {
  NatSysOptions rep = opts;
  rep.upper_representatives = true;
  rep.carrier_values = true;
  NatSysOptions plain = opts;
  plain.upper_representatives = false;
  plain.carrier_values = false;

  Comparison c{natural_system(x, val, rep), natural_system(x, val, plain), {}};
  for (std::size_t i = 0; i < c.representatives.fact.objects.size(); ++i) {
    const std::size_t j = object_of(c.target, c.representatives.fact.objects[i], c.representatives.fact.objects[i]);
    const TraceSpaceValue& s = c.representatives.space(i);
    const TraceSpaceValue& t = c.target.space(j);
    CubicalMap cm = same_words(s, t);
    c.map.on_objects.push_back(j);
    c.map.strict.push_back(cube_bijection(cm, s, t));
    c.map.components.push_back(induced(cm, s, c.representatives.valued_at(i), t, c.target.valued_at(j), val));
  }
  return c;
}

}  // namespace mds
