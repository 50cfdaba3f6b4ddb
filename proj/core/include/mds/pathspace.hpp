#pragma once

// Precubical models of trace spaces, discrete traces of PL directed paths.

#include "mds/gcomplex.hpp"
#include "mds/reparam.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mds {

/// A composable sequence of 1-cells and 2-cells. A 2-cell letter stands for
/// the track from its lower to its upper boundary path.
using Word = std::vector<CellId>;

/// "a.b.c", or "()" for the empty word.
std::string word_text(const Complex& x, const Word& w);

inline constexpr std::size_t kDefaultCap = 100000;

/// k-cubes are the words source -> target with exactly k 2-cell letters.
/// Face d_j^0 replaces the j-th 2-cell letter by its lower path, d_j^1 by its upper path.
class PathComplex {
 public:
  PathComplex() = default;
  PathComplex(const Complex& x, CellId source, CellId target) : complex_(&x), source_(source), target_(target) {}

  const Complex& complex() const { return *complex_; }
  CellId source() const noexcept { return source_; }
  CellId target() const noexcept { return target_; }

  /// Highest degree with a cube; -1 when there are no cubes at all.
  int dimension() const noexcept { return static_cast<int>(cubes_.size()) - 1; }
  std::size_t count(int k) const { return k >= 0 && k < static_cast<int>(cubes_.size()) ? cubes_[k].size() : 0; }
  const Word& cube(int k, std::size_t i) const { return cubes_.at(k).at(i); }
  const std::vector<Word>& cubes(int k) const { return cubes_.at(k); }
  /// {d_j^0, d_j^1} of cube i in degree k >= 1, j = 1..k, as indices in degree k-1.
  const std::array<std::size_t, 2>& face(int k, std::size_t i, int j) const { return faces_.at(k).at(i).at(j - 1); }

  std::optional<std::size_t> find(const Word& w) const;

  /// Drops every cube of degree above max_dim.
  PathComplex truncated(int max_dim) const;

  /// "cube<k> <word> faces: <d1^0> <d1^1> ..." lines in canonical order.
  std::string text() const;

  /// Builds faces and indices from cubes already sorted per degree.
  void assemble(std::vector<std::vector<Word>> cubes);

 private:
  const Complex* complex_ = nullptr;
  CellId source_ = kNoCell;
  CellId target_ = kNoCell;
  std::vector<std::vector<Word>> cubes_;
  std::vector<std::vector<std::vector<std::array<std::size_t, 2>>>> faces_;
  std::vector<std::map<Word, std::size_t>> index_;
};

/// Positions of the 2-cell letters of a word.
std::vector<std::size_t> track_positions(const Complex& x, const Word& w);
/// Replaces the 2-cell letter at the given position by its lower (side 0) or upper (side 1) path.
Word face_word(const Complex& x, const Word& w, std::size_t position, int side);

/// All edge-paths alpha -> beta, lexicographic by names. Throws NotLoopFree,
/// UnsupportedDimension, CapExceeded.
std::vector<Word> enumerate_vertex_paths(const Complex& x, CellId alpha, CellId beta, std::size_t cap = kDefaultCap);

PathComplex path_complex(const Complex& x, CellId alpha, CellId beta, std::size_t cap = kDefaultCap);

/// First violated identity d_i^a d_j^b = d_{j-1}^b d_i^a (i < j), if any.
std::optional<std::string> check_precubical(const PathComplex& p);

/// Trace-space value between two cells: the path complex plus an optional
/// isolated point standing for the constant trace inside a cell of dim >= 1.
/// Vertices are numbered 0..base.count(0)-1, the extra point last.
struct TraceSpaceValue {
  PathComplex base;
  bool extra_point = false;

  std::size_t vertex_count() const { return base.count(0) + (extra_point ? 1 : 0); }
  std::size_t extra_index() const { return base.count(0); }
  std::string vertex_text(std::size_t v) const;
  int dimension() const { return std::max(base.dimension(), extra_point ? 0 : -1); }
};

/// True iff a ⪯-chain c = c1 ⪯ ... ⪯ cn = d exists (n >= 1).
bool has_trace(const Complex& x, CellId c, CellId d);

/// Start state used for traces leaving c: c itself for a state, c^+ otherwise.
CellId exit_state(const Complex& x, CellId c);
/// End state used for traces entering d: d itself for a state, d^- otherwise.
CellId entry_state(const Complex& x, CellId d);

/// Value between centers of c and d. Throws NoTrace.
TraceSpaceValue trace_space(const Complex& x, CellId c, CellId d, std::size_t cap = kDefaultCap);

// ---------------------------------------------------------------- cubical maps

/// Image of one cube: a target cube of degree = number of kept coordinates;
/// coords[j] is the target coordinate of source coordinate j, or -1 if collapsed.
struct CubeImage {
  std::size_t cube = 0;
  std::vector<int> coords;

  int degree() const;
  friend bool operator==(const CubeImage&, const CubeImage&) = default;
};

/// Map of trace-space values; images[0] covers the extra point too.
struct CubicalMap {
  std::vector<std::vector<CubeImage>> images;

  friend bool operator==(const CubicalMap&, const CubicalMap&) = default;
};

/// Target of a source cube under a word-level map.
struct MappedCube {
  bool extra = false;
  Word word;
  std::vector<int> coords;
};

/// Tabulates a word-level map and checks it is cubical. Throws NotCubical.
CubicalMap tabulate(const TraceSpaceValue& src, const TraceSpaceValue& dst,
                    const std::function<MappedCube(const Word&)>& on_word, const MappedCube& on_extra);

/// Throws NotCubical unless faces are carried to faces (collapsed coordinates
/// send both faces to the image of the cube).
void check_cubical(const CubicalMap& f, const TraceSpaceValue& src, const TraceSpaceValue& dst);

CubicalMap identity_map(const TraceSpaceValue& v);
CubicalMap compose(const CubicalMap& g, const CubicalMap& f);

enum class Side { Left, Right };

/// w -> path.w (Left) or w.path (Right); the extra point goes to the empty word.
CubicalMap extend_map(const TraceSpaceValue& src, const TraceSpaceValue& dst, Side side, const Word& path);

/// Edge-path standing for a cell of dim >= 1 when one vertex must be chosen:
/// the cell itself for an edge, its lower (or upper) path for a 2-cell.
Word representative(const Complex& x, CellId c, bool use_upper = false);

// ---------------------------------------------------------------- PL directed paths

struct PathLetter {
  CellId cell = kNoCell;
  Rational z = Rational(1, 2);  // meridian inside a 2-cell, in (0,1)
};

/// Word of cells traversed at unit speed, read through a clock [0,1] -> [0,n].
struct DirectedPathPL {
  std::vector<PathLetter> word;
  PLMap clock = PLMap::identity(0, 1);
};

/// Throws EndpointMismatch / DomainMismatch / NotMonotone / UnknownCell.
void validate_path(const Complex& x, const DirectedPathPL& g);

/// Cell containing the point at word position u in [0,n].
CellId cell_at(const Complex& x, const DirectedPathPL& g, const Rational& u);

struct DiscreteTrace {
  std::vector<CellId> chain;
  std::vector<Rational> breakpoints;  // t_0 = 0 <= ... <= t_n = 1
};

DiscreteTrace discrete_trace(const Complex& x, const DirectedPathPL& g);

/// Checks the five defining conditions of a discrete trace against the path
/// by exact probing. Returns the first failure.
std::optional<std::string> check_discrete_trace(const Complex& x, const DirectedPathPL& g, const DiscreteTrace& dt);

struct Naturalization {
  DirectedPathPL natgl;  // clock t -> n t
  Surjection phi;        // the original clock, in M(1,n)
};

/// Throws NotExecutionPath unless the clock runs from 0 onto n.
Naturalization naturalize(const Complex& x, const DirectedPathPL& g);

std::string chain_text(const Complex& x, const std::vector<CellId>& chain);

}  // namespace mds
