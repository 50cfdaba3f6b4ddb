#pragma once

#include <iosfwd>

namespace mds::cli {

/// Runs the `mds` command line. Exit codes: 0 affirmative, 1 negative verdict, 2 error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mds::cli
