#pragma once

// Discrete traces, their category of factorizations, and the natural system
// of trace spaces indexed by it.

#include "mds/algtop.hpp"
#include "mds/diagram.hpp"
#include "mds/gcomplex.hpp"
#include "mds/pathspace.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace mds {

using Chain = std::vector<CellId>;

/// Shorter chains first, then lexicographic by cell names.
bool chain_less(const Complex& x, const Chain& a, const Chain& b);

/// Objects are the cells of the complex; morphisms are the ⪯-chains.
struct TraceCategory {
  const Complex* complex = nullptr;
  std::vector<Chain> traces;  // canonical order
};

/// Throws NotLoopFree, UnsupportedDimension, CapExceeded.
TraceCategory trace_category(const Complex& x, std::size_t cap = kDefaultCap);

/// One-cell extension of a chain on the left or on the right.
struct Extension {
  std::size_t from = 0;
  std::size_t to = 0;
  Side side = Side::Left;
  CellId cell = kNoCell;
};

struct FactCategory {
  const Complex* complex = nullptr;
  std::vector<Chain> objects;  // canonical order
  std::map<Chain, std::size_t> index;
  std::vector<Extension> extensions;  // by source, then left before right, then target

  /// Object labels are chain texts; generator labels "left:<cell>" / "right:<cell>".
  IndexCategory index_category() const;
};

FactCategory factorization_category(const TraceCategory& t);

struct NatSysOptions {
  std::size_t cap = kDefaultCap;
  unsigned jobs = 1;
  /// Extend along the upper instead of the lower boundary of a 2-cell.
  bool upper_representatives = false;
  /// Compute values by the case split on the carrier cells of the end points
  /// rather than through trace_space.
  bool carrier_values = false;
};

struct NaturalSystem {
  const Complex* complex = nullptr;
  FactCategory fact;
  std::vector<std::size_t> space_of;  // object -> spaces index, shared per end-cell pair
  std::vector<TraceSpaceValue> spaces;
  std::vector<Valued> valued;
  std::vector<CubicalMap> extension_maps;  // per extension
  Diagram diagram;

  const TraceSpaceValue& space(std::size_t object) const { return spaces.at(space_of.at(object)); }
  const Valued& valued_at(std::size_t object) const { return valued.at(space_of.at(object)); }
};

NaturalSystem natural_system(const Complex& x, const Valuation& val, const NatSysOptions& opts = {});

/// Trace space between points carried by the open cells p and q, by cases on
/// whether each is a state and whether they coincide.
TraceSpaceValue value_between_carriers(const Complex& x, CellId p, CellId q, std::size_t cap = kDefaultCap);

struct PathValueReport {
  DiscreteTrace trace;
  ValuedSpace by_carriers;
  ValuedSpace by_trace;
  bool agree = false;
};

/// Value of the natural system at a path, computed from its end point carriers
/// and from its discrete trace.
PathValueReport nt_value_of_path(const Complex& x, const DirectedPathPL& g, const Valuation& val,
                                 std::size_t cap = kDefaultCap);

/// Map induced by a cellular map: chains go to normalized image chains, trace
/// spaces by letter substitution. Throws NotFunctorial, NotCubical.
DiagramMap crush_induced_map(const CellularMap& m, const NaturalSystem& src, const NaturalSystem& dst);

/// Map from the natural system of a subdivision to that of the coarse complex.
DiagramMap refinement_map(const Subdivision& s, const NaturalSystem& fine, const NaturalSystem& coarse);

/// The system on center representatives of discrete traces mapped onto the
/// discrete natural system.
struct Comparison {
  NaturalSystem representatives;
  NaturalSystem target;
  DiagramMap map;
};

Comparison dt_comparison(const Complex& x, const Valuation& val, const NatSysOptions& opts = {});

}  // namespace mds
