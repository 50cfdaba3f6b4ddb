#pragma once

// Line-oriented text formats: GCX complexes, PCX precubical sets, CMAP
// cellular maps and PL directed paths. Errors carry "<source>:<line>:".

#include "mds/gcomplex.hpp"
#include "mds/pathspace.hpp"

#include <string>
#include <string_view>

namespace mds {

/// state <n> | edge <n> : <s> -> <s> | cell2 <n> : e(,e)* => e(,e)* | cell<k> <n> : <data...>
GlobularComplex parse_gcx(std::string_view text, std::string_view source = "<gcx>");
std::string write_gcx(const GlobularComplex& x);

/// vertex <n> | cube1 <n> : <v> <v> | cube2 <n> : <e> <e> <e> <e>
PrecubicalSet2 parse_pcx(std::string_view text, std::string_view source = "<pcx>");
std::string write_pcx(const PrecubicalSet2& k);

/// map <src-cell> -> <cell>(,<cell>)*. Cells of X without a line go to the
/// same-named cell of Y when there is one.
CellularMap parse_cmap(std::string_view text, const Complex& x, const Complex& y, std::string_view source = "<cmap>");
std::string write_cmap(const CellularMap& m);

/// path : <cell>[@<num>/<den>] ... clock: (<t>,<v>) ...
DirectedPathPL parse_path(std::string_view text, const Complex& x, std::string_view source = "<path>");
std::string write_path(const Complex& x, const DirectedPathPL& g);

}  // namespace mds
