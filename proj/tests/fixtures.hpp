#pragma once

#include "mds/gcomplex.hpp"
#include "mds/text_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fx {

inline std::string path(const std::string& file) { return std::string(FIXTURES_DIR) + "/" + file; }

inline std::string read(const std::string& file) {
  std::ifstream in(path(file));
  if (!in) throw std::runtime_error("cannot open fixture " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline mds::GlobularComplex decl(const std::string& file) {
  if (file.size() > 4 && file.substr(file.size() - 4) == ".pcx") return mds::import_precubical(mds::parse_pcx(read(file), file));
  return mds::parse_gcx(read(file), file);
}

inline mds::Complex load(const std::string& file) { return mds::Complex::build(decl(file)); }

/// The gallery of complexes computed on by the engine.
inline const std::vector<std::string>& gallery() {
  static const std::vector<std::string> names = {"edge.gcx",      "edge_split.gcx", "hollow.gcx",   "square.gcx", "fig_a.gcx",
                                                  "fig_b.gcx",     "twocells.gcx",   "loopcell.gcx", "two_squares.gcx"};
  return names;
}

}  // namespace fx
