#pragma once

// Finite globular complexes: states, 1-cells, 2-cells glued along edge-paths.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mds {

struct EdgeDecl {
  std::string name;
  std::string src;
  std::string tgt;
};

struct Cell2Decl {
  std::string name;
  std::vector<std::string> lower;
  std::vector<std::string> upper;
};

/// Cells of dimension >= 3 are kept verbatim and never computed on.
struct CellHiDecl {
  std::string name;
  int dim = 3;
  std::vector<std::string> data;
};

/// Plain declarations, as read from a file. Not necessarily well-formed.
struct GlobularComplex {
  std::vector<std::string> states;
  std::vector<EdgeDecl> edges;
  std::vector<Cell2Decl> cells2;
  std::vector<CellHiDecl> cells_hi;

  bool has_name(std::string_view name) const;
};

enum class IssueKind { BadName, DuplicateName, UnknownCell, LoopEdge, EmptyPath, NotComposable, BoundaryMismatch, BadDimension };

std::string_view to_string(IssueKind kind) noexcept;

struct Issue {
  IssueKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool has(IssueKind kind) const;
  /// One "<Kind>: message" line per issue.
  std::string text() const;
};

ValidationReport validate(const GlobularComplex& x);

using CellId = std::size_t;
inline constexpr CellId kNoCell = static_cast<CellId>(-1);

struct CellInfo {
  std::string name;
  int dim = 0;
  CellId minus = kNoCell;  // c^-; the state itself for dim 0
  CellId plus = kNoCell;   // c^+
  std::vector<CellId> lower;
  std::vector<CellId> upper;
};

/// Validated, indexed complex. Ids: states, then edges, then 2-cells, then
/// higher cells, each in declaration order.
class Complex {
 public:
  /// Throws InvalidComplex carrying the validation report.
  static Complex build(GlobularComplex decl);

  const GlobularComplex& decl() const noexcept { return decl_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const CellInfo& cell(CellId id) const { return cells_.at(id); }
  const std::string& name(CellId id) const { return cells_.at(id).name; }
  int dim(CellId id) const { return cells_.at(id).dim; }

  std::optional<CellId> find(std::string_view name) const;
  /// Throws UnknownCell.
  CellId id(std::string_view name) const;
  /// Throws UnknownState unless the name is a state.
  CellId state(std::string_view name) const;

  int dimension() const noexcept { return dimension_; }
  bool has_high_cells() const noexcept { return !decl_.cells_hi.empty(); }

  /// Cells of dimension 1 and 2 leaving a state, ordered by name.
  const std::vector<CellId>& letters_from(CellId state) const { return letters_from_.at(state); }
  /// Edges leaving a state, ordered by name.
  const std::vector<CellId>& edges_from(CellId state) const { return edges_from_.at(state); }

  /// c ⪯ d: c != d and (c = d^- with dim d >= 1, or c^+ = d with dim c >= 1).
  bool precedes(CellId c, CellId d) const;
  /// All d with c ⪯ d, ordered by name.
  const std::vector<CellId>& successors(CellId c) const { return successors_.at(c); }

  /// Cell ids sorted by name.
  const std::vector<CellId>& by_name() const noexcept { return by_name_; }

  bool is_loop_free() const noexcept { return loop_free_; }

 private:
  GlobularComplex decl_;
  std::vector<CellInfo> cells_;
  std::unordered_map<std::string, CellId> index_;
  std::vector<std::vector<CellId>> letters_from_;
  std::vector<std::vector<CellId>> edges_from_;
  std::vector<std::vector<CellId>> successors_;
  std::vector<CellId> by_name_;
  int dimension_ = 0;
  bool loop_free_ = true;
};

/// True iff the 1-skeleton has no directed cycle and no self-loop.
bool is_loop_free(const GlobularComplex& x);

/// Throws UnsupportedDimension or NotLoopFree unless paths can be enumerated.
void require_computable(const Complex& x);

// ---------------------------------------------------------------- precubical

struct PcxEdge {
  std::string name;
  std::string src;  // d_1^0
  std::string tgt;  // d_1^1
};

struct PcxSquare {
  std::string name;
  std::string d10, d11, d20, d21;
};

struct PrecubicalSet2 {
  std::vector<std::string> vertices;
  std::vector<PcxEdge> edges;
  std::vector<PcxSquare> squares;
};

/// Squares become 2-cells from the (0,0) corner to the (1,1) corner with
/// lower = d_1^0 . d_2^1 and upper = d_2^0 . d_1^1. Throws InvalidFaces.
GlobularComplex import_precubical(const PrecubicalSet2& k);

// ---------------------------------------------------------------- subdivision

struct Subdivision {
  GlobularComplex complex;
  /// Fine cell name -> coarse cell name, total on the fine complex.
  std::map<std::string, std::string> refinement;
};

/// Splits edge e into <e>_1, <e>_2 through a fresh state <e>_w.
Subdivision subdivide_edge(const GlobularComplex& x, std::string_view edge);

/// Replaces 2-cell c by <c>_top : lower(c) => m and <c>_bot : m => upper(c),
/// where m is a chord of k fresh edges <c>_m1..<c>_mk. Throws BadChordSpec if k < 1.
Subdivision subdivide_2cell(const GlobularComplex& x, std::string_view cell, int chord);

// ---------------------------------------------------------------- cellular maps

struct CellularMap {
  std::map<std::string, std::string> states;
  std::map<std::string, std::vector<std::string>> cells;
};

/// Every state is sent to a state, every cell to a ⪯-chain whose end states
/// match the images of c^- and c^+.
ValidationReport validate_cellular_map(const CellularMap& m, const Complex& x, const Complex& y);

/// The identity-on-names map X -> X.
CellularMap identity_map(const Complex& x);

}  // namespace mds
