#include "mds/algtop.hpp"

#include "mds/error.hpp"

#include <algorithm>
#include <numeric>

namespace mds {

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DomainMismatch, "ragged matrix literal");
    for (long long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::rows_from(std::size_t first) const {
  IntMatrix out(rows_ > first ? rows_ - first : 0, cols_);
  for (std::size_t i = 0; i < out.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& which) const {
  IntMatrix out(which.size(), cols_);
  for (std::size_t i = 0; i < which.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(which[i], j);
  return out;
}

std::string IntMatrix::text() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ',';
      out += (*this)(i, j).str();
    }
    out += ']';
  }
  return out + "]";
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DomainMismatch, "matrix shapes do not compose");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------- Smith normal form

namespace {

class SmithWork {
 public:
  explicit SmithWork(const IntMatrix& m)
      : s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), IntMatrix::identity(m.rows()),
          IntMatrix::identity(m.cols()), 0} {}

  // row_i += c * row_t
  void add_row(std::size_t i, std::size_t t, const Integer& c) {
    for (std::size_t j = 0; j < s.d.cols(); ++j) s.d(i, j) += c * s.d(t, j);
    for (std::size_t j = 0; j < s.u.cols(); ++j) s.u(i, j) += c * s.u(t, j);
    for (std::size_t j = 0; j < s.u_inv.rows(); ++j) s.u_inv(j, t) -= c * s.u_inv(j, i);
  }
  // col_j += c * col_t
  void add_col(std::size_t j, std::size_t t, const Integer& c) {
    for (std::size_t i = 0; i < s.d.rows(); ++i) s.d(i, j) += c * s.d(i, t);
    for (std::size_t i = 0; i < s.v.rows(); ++i) s.v(i, j) += c * s.v(i, t);
    for (std::size_t i = 0; i < s.v_inv.cols(); ++i) s.v_inv(t, i) -= c * s.v_inv(j, i);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < s.d.cols(); ++j) std::swap(s.d(a, j), s.d(b, j));
    for (std::size_t j = 0; j < s.u.cols(); ++j) std::swap(s.u(a, j), s.u(b, j));
    for (std::size_t j = 0; j < s.u_inv.rows(); ++j) std::swap(s.u_inv(j, a), s.u_inv(j, b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < s.d.rows(); ++i) std::swap(s.d(i, a), s.d(i, b));
    for (std::size_t i = 0; i < s.v.rows(); ++i) std::swap(s.v(i, a), s.v(i, b));
    for (std::size_t i = 0; i < s.v_inv.cols(); ++i) std::swap(s.v_inv(a, i), s.v_inv(b, i));
  }
  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < s.d.cols(); ++j) s.d(t, j) = -s.d(t, j);
    for (std::size_t j = 0; j < s.u.cols(); ++j) s.u(t, j) = -s.u(t, j);
    for (std::size_t j = 0; j < s.u_inv.rows(); ++j) s.u_inv(j, t) = -s.u_inv(j, t);
  }

  SmithForm run() {
    const std::size_t m = s.d.rows();
    const std::size_t n = s.d.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!place_smallest(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (s.d(i, t) == 0) continue;
          add_row(i, t, -Integer(s.d(i, t) / s.d(t, t)));
          if (s.d(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (s.d(t, j) == 0) continue;
          add_col(j, t, -Integer(s.d(t, j) / s.d(t, t)));
          if (s.d(t, j) != 0) dirty = true;
        }
        if (dirty) {
          place_smallest_in_cross(t);
          continue;
        }
        // Pivot must divide the rest of the block.
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n && !fixed; ++j)
            if (s.d(i, j) % s.d(t, t) != 0) {
              add_row(t, i, 1);
              fixed = true;
            }
        if (!fixed) break;
      }
      if (s.d(t, t) < 0) negate_row(t);
    }
    s.rank = t;
    return std::move(s);
  }

 private:
  // Moves the smallest nonzero |entry| of the block (t.., t..) to (t, t).
  bool place_smallest(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < s.d.rows(); ++i)
      for (std::size_t j = t; j < s.d.cols(); ++j) {
        if (s.d(i, j) == 0) continue;
        if (!found || abs(s.d(i, j)) < abs(s.d(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void place_smallest_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < s.d.rows(); ++i)
      if (s.d(i, t) != 0 && (s.d(bi, bj) == 0 || abs(s.d(i, t)) < abs(s.d(bi, bj)))) {
        bi = i;
        bj = t;
      }
    for (std::size_t j = t; j < s.d.cols(); ++j)
      if (s.d(t, j) != 0 && (s.d(bi, bj) == 0 || abs(s.d(t, j)) < abs(s.d(bi, bj)))) {
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  SmithForm s;
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) { return SmithWork(m).run(); }

// ---------------------------------------------------------------- groups and chains

std::string FgAbGroup::text() const {
  if (is_zero()) return "0";
  std::string out;
  if (rank > 0) out = "Z^" + std::to_string(rank);
  for (const auto& d : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.str();
  }
  return out;
}

IntMatrix ChainComplex::d(int k) const {
  if (k >= 1 && k < static_cast<int>(boundary.size())) return boundary[k];
  return IntMatrix(rank(k - 1), rank(k));
}

bool ChainComplex::is_complex() const {
  for (int k = 2; k < static_cast<int>(ranks.size()); ++k)
    if (!(d(k - 1) * d(k)).is_zero()) return false;
  return true;
}

ChainComplex chain_complex(const PathComplex& p) {
  ChainComplex c;
  for (int k = 0; k <= p.dimension(); ++k) c.ranks.push_back(p.count(k));
  c.boundary.emplace_back(0, c.rank(0));
  for (int k = 1; k <= p.dimension(); ++k) {
    IntMatrix b(p.count(k - 1), p.count(k));
    for (std::size_t i = 0; i < p.count(k); ++i)
      for (int j = 1; j <= k; ++j) {
        const int sign = j % 2 == 0 ? 1 : -1;
        const auto& f = p.face(k, i, j);
        b(f[0], i) += sign;
        b(f[1], i) -= sign;
      }
    c.boundary.push_back(std::move(b));
  }
  return c;
}

ChainComplex chain_complex(const TraceSpaceValue& v) {
  ChainComplex c = chain_complex(v.base);
  if (!v.extra_point) return c;
  if (c.ranks.empty()) {
    c.ranks.push_back(0);
    c.boundary.emplace_back(0, 0);
  }
  c.ranks[0] += 1;
  c.boundary[0] = IntMatrix(0, c.ranks[0]);
  if (c.boundary.size() > 1) {
    IntMatrix grown(c.ranks[0], c.ranks.size() > 1 ? c.ranks[1] : 0);
    for (std::size_t i = 0; i + 1 < c.ranks[0]; ++i)
      for (std::size_t j = 0; j < grown.cols(); ++j) grown(i, j) = c.boundary[1](i, j);
    c.boundary[1] = std::move(grown);
  }
  return c;
}

HomologyBasis homology_basis(const ChainComplex& c, int k) {
  const std::size_t n = c.rank(k);
  const SmithForm outgoing = smith_normal_form(c.d(k));
  const std::size_t r = outgoing.rank;
  const std::size_t z = n - r;

  IntMatrix kernel(n, z);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < z; ++j) kernel(i, j) = outgoing.v(i, r + j);
  const IntMatrix to_kernel = outgoing.v_inv.rows_from(r);  // z x n

  const SmithForm incoming = smith_normal_form(to_kernel * c.d(k + 1));
  const auto diag = incoming.diagonal();

  HomologyBasis h;
  std::vector<std::size_t> pick;
  for (std::size_t i = incoming.rank; i < z; ++i) {
    pick.push_back(i);
    h.moduli.push_back(0);
  }
  h.group.rank = pick.size();
  for (std::size_t i = 0; i < incoming.rank; ++i) {
    if (diag[i] == 1) continue;
    pick.push_back(i);
    h.moduli.push_back(diag[i]);
    h.group.torsion.push_back(diag[i]);
  }
  h.coords = incoming.u.select_rows(pick) * to_kernel;
  IntMatrix lift(z, pick.size());
  for (std::size_t i = 0; i < z; ++i)
    for (std::size_t j = 0; j < pick.size(); ++j) lift(i, j) = incoming.u_inv(i, pick[j]);
  h.cycles = kernel * lift;
  return h;
}

FgAbGroup homology(const ChainComplex& c, int k) { return homology_basis(c, k).group; }
FgAbGroup homology(const PathComplex& p, int k) { return homology(chain_complex(p), k); }

std::string homology_line(const PathComplex& p, int k, const FgAbGroup& g) {
  return "H" + std::to_string(k) + "(" + p.complex().name(p.source()) + "," + p.complex().name(p.target()) +
         ") = " + g.text();
}

FinPartition pi0(const TraceSpaceValue& v) {
  const std::size_t n = v.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t e = 0; e < v.base.count(1); ++e) {
    const auto& f = v.base.face(1, e, 1);
    auto a = root(f[0]);
    auto b = root(f[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  FinPartition p;
  p.component.assign(n, 0);
  std::vector<std::size_t> label(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = root(i);
    if (label[r] == static_cast<std::size_t>(-1)) {
      label[r] = p.count++;
      p.leaders.push_back(i);
    }
    p.component[i] = label[r];
  }
  return p;
}

FinPartition pi0(const PathComplex& p) { return pi0(TraceSpaceValue{p, false}); }

IntMatrix chain_map(const CubicalMap& f, const TraceSpaceValue& src, const TraceSpaceValue& dst, int k) {
  const ChainComplex cs = chain_complex(src);
  const ChainComplex cd = chain_complex(dst);
  IntMatrix m(cd.rank(k), cs.rank(k));
  if (k < static_cast<int>(f.images.size()))
    for (std::size_t i = 0; i < f.images[k].size(); ++i) {
      const auto& img = f.images[k][i];
      if (img.degree() == k) m(img.cube, i) = 1;
    }
  return m;
}

// ---------------------------------------------------------------- valuations

Valuation Valuation::parse(std::string_view text) {
  if (text == "pi0") return pi0();
  if (text.substr(0, 4) == "hom:" && text.size() > 4) {
    int k = 0;
    for (char ch : text.substr(4)) {
      if (ch < '0' || ch > '9' || k > 1000) throw Error(ErrorKind::ParseError, "bad valuation '" + std::string(text) + "'");
      k = k * 10 + (ch - '0');
    }
    return homology(k);
  }
  throw Error(ErrorKind::ParseError, "valuation must be pi0 or hom:<k>, got '" + std::string(text) + "'");
}

std::string Valuation::text() const { return kind == Kind::Pi0 ? "pi0" : "hom:" + std::to_string(max_degree); }

std::string ValuedSpace::text() const {
  if (homology.empty()) return std::to_string(components) + (components == 1 ? " component" : " components");
  std::string out;
  for (std::size_t k = 0; k < homology.size(); ++k) {
    if (k) out += "; ";
    out += "H" + std::to_string(k) + " = " + homology[k].text();
  }
  return out;
}

std::string ValuedMap::text() const {
  if (on_homology.empty()) {
    std::string out = "[";
    for (std::size_t i = 0; i < on_components.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(on_components[i]);
    }
    return out + "]";
  }
  std::string out;
  for (std::size_t k = 0; k < on_homology.size(); ++k) {
    if (k) out += "; ";
    out += "H" + std::to_string(k) + " " + on_homology[k].text();
  }
  return out;
}

namespace {

std::vector<Integer> moduli_of(const FgAbGroup& g) {
  std::vector<Integer> m(g.rank, 0);
  m.insert(m.end(), g.torsion.begin(), g.torsion.end());
  return m;
}

void reduce_rows(IntMatrix& m, const std::vector<Integer>& moduli) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (moduli[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer r = m(i, j) % moduli[i];
      if (r < 0) r += moduli[i];
      m(i, j) = r;
    }
  }
}

}  // namespace

Valued valuate(const TraceSpaceValue& v, const Valuation& val) {
  Valued out;
  if (val.kind == Valuation::Kind::Pi0) {
    out.partition = pi0(v);
    out.space.components = out.partition.count;
    return out;
  }
  const ChainComplex c = chain_complex(v);
  for (int k = 0; k <= val.max_degree; ++k) {
    out.bases.push_back(homology_basis(c, k));
    out.space.homology.push_back(out.bases.back().group);
  }
  return out;
}

ValuedMap induced(const CubicalMap& f, const TraceSpaceValue& src, const Valued& vsrc, const TraceSpaceValue& dst,
                  const Valued& vdst, const Valuation& val) {
  ValuedMap out;
  if (val.kind == Valuation::Kind::Pi0) {
    for (std::size_t leader : vsrc.partition.leaders)
      out.on_components.push_back(vdst.partition.component.at(f.images.at(0).at(leader).cube));
    return out;
  }
  for (int k = 0; k <= val.max_degree; ++k) {
    IntMatrix m = vdst.bases[k].coords * chain_map(f, src, dst, k) * vsrc.bases[k].cycles;
    reduce_rows(m, vdst.bases[k].moduli);
    out.on_homology.push_back(std::move(m));
  }
  return out;
}

ValuedMap identity(const ValuedSpace& s) {
  ValuedMap out;
  if (s.homology.empty()) {
    for (std::size_t i = 0; i < s.components; ++i) out.on_components.push_back(i);
    return out;
  }
  for (const auto& g : s.homology) out.on_homology.push_back(IntMatrix::identity(g.rank + g.torsion.size()));
  return out;
}

ValuedMap reduce(ValuedMap m, const ValuedSpace& target) {
  for (std::size_t k = 0; k < m.on_homology.size(); ++k) reduce_rows(m.on_homology[k], moduli_of(target.homology.at(k)));
  return m;
}

ValuedMap compose(const ValuedMap& g, const ValuedMap& f, const ValuedSpace& target) {
  ValuedMap out;
  for (std::size_t i : f.on_components) out.on_components.push_back(g.on_components.at(i));
  for (std::size_t k = 0; k < f.on_homology.size(); ++k) out.on_homology.push_back(g.on_homology.at(k) * f.on_homology[k]);
  return reduce(std::move(out), target);
}

}  // namespace mds
