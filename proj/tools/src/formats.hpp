#pragma once

// Text formats used only by the command-line tool.

#include "mds/algtop.hpp"
#include "mds/reparam.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mds::cli {

/// piece <share> path (t,v)... [path (t,v)...] clock (t,v)...
/// clock (t,v)...
struct WordFile {
  std::vector<WordPiece> word;
  Clock phi{PLMap::identity(0, 1), 1};
};

WordFile parse_word_file(std::string_view text, std::string_view source);
std::string points_text(const PLMap& f);
std::string piece_text(const WordPiece& p);

/// Whitespace-separated integer rows; '#' starts a comment.
IntMatrix parse_matrix(std::string_view text, std::string_view source);

std::string read_file(const std::string& path);

}  // namespace mds::cli
