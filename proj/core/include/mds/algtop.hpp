#pragma once

// Integer chains, Smith normal form, homology and pi0 of trace-space values.

#include "mds/pathspace.hpp"
#include "mds/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mds {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  IntMatrix rows_from(std::size_t first) const;
  IntMatrix select_rows(const std::vector<std::size_t>& which) const;
  std::string text() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// D = U M V with U, V unimodular; D diagonal, d_1 | d_2 | ... , d_i > 0 for i < rank.
struct SmithForm {
  IntMatrix d, u, v, u_inv, v_inv;
  std::size_t rank = 0;

  /// The nonzero diagonal entries d_1 .. d_rank.
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

struct FgAbGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // each >= 2, each dividing the next

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  /// "0", "Z^2", "Z^1 + Z/2 + Z/4", "Z/3".
  std::string text() const;
  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;
};

/// Cubical chains with boundary sum_j (-1)^j (d_j^0 - d_j^1); the extra
/// point of a trace-space value is one more 0-chain generator.
struct ChainComplex {
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> boundary;  // boundary[k] : C_k -> C_{k-1}; boundary[0] is 0 x ranks[0]

  std::size_t rank(int k) const { return k >= 0 && k < static_cast<int>(ranks.size()) ? ranks[k] : 0; }
  /// ranks[k-1] x ranks[k], zero-sized outside the stored range.
  IntMatrix d(int k) const;
  bool is_complex() const;
};

ChainComplex chain_complex(const PathComplex& p);
ChainComplex chain_complex(const TraceSpaceValue& v);

/// H_k with chosen generators: coordinates free ones first, then torsion ones.
struct HomologyBasis {
  FgAbGroup group;
  IntMatrix coords;              // (generator coordinates) x C_k, valid on cycles
  std::vector<Integer> moduli;   // 0 for free coordinates, d for Z/d
  IntMatrix cycles;              // C_k x (generators), representative cycles
};

HomologyBasis homology_basis(const ChainComplex& c, int k);
FgAbGroup homology(const ChainComplex& c, int k);
FgAbGroup homology(const PathComplex& p, int k);

/// "H<k>(<alpha>,<beta>) = <group>".
std::string homology_line(const PathComplex& p, int k, const FgAbGroup& g);

struct FinPartition {
  std::vector<std::size_t> component;  // per vertex
  std::size_t count = 0;
  /// Least vertex of each component.
  std::vector<std::size_t> leaders;
};

/// Components of the 1-skeleton, numbered by least vertex.
FinPartition pi0(const TraceSpaceValue& v);
FinPartition pi0(const PathComplex& p);

/// Chain map of a cubical map in degree k: collapsed cubes go to 0.
IntMatrix chain_map(const CubicalMap& f, const TraceSpaceValue& src, const TraceSpaceValue& dst, int k);

// ---------------------------------------------------------------- valuations

struct Valuation {
  enum class Kind { Pi0, Homology };
  Kind kind = Kind::Pi0;
  int max_degree = 0;

  static Valuation pi0() { return {}; }
  static Valuation homology(int k) { return {Kind::Homology, k}; }
  /// "pi0" or "hom:<k>". Throws ParseError.
  static Valuation parse(std::string_view text);
  std::string text() const;
};

/// The invariants a valuation keeps of a space.
struct ValuedSpace {
  std::size_t components = 0;        // pi0 valuation
  std::vector<FgAbGroup> homology;   // hom valuation, degrees 0..k

  std::string text() const;
  friend bool operator==(const ValuedSpace&, const ValuedSpace&) = default;
};

/// Induced map between valued spaces.
struct ValuedMap {
  std::vector<std::size_t> on_components;
  std::vector<IntMatrix> on_homology;  // per degree, in generator coordinates

  std::string text() const;
  friend bool operator==(const ValuedMap&, const ValuedMap&) = default;
};

/// A space together with the bases needed to express induced maps.
struct Valued {
  ValuedSpace space;
  FinPartition partition;
  std::vector<HomologyBasis> bases;
};

Valued valuate(const TraceSpaceValue& v, const Valuation& val);
ValuedMap induced(const CubicalMap& f, const TraceSpaceValue& src, const Valued& vsrc, const TraceSpaceValue& dst,
                  const Valued& vdst, const Valuation& val);

ValuedMap identity(const ValuedSpace& s);
/// g . f, with torsion coordinates reduced modulo the target orders.
ValuedMap compose(const ValuedMap& g, const ValuedMap& f, const ValuedSpace& target);
/// Reduces torsion coordinates of a map into `target`.
ValuedMap reduce(ValuedMap m, const ValuedSpace& target);

}  // namespace mds
