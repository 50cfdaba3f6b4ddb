#pragma once

// Randomized exact checks exposed by the command-line tool.

#include "mds/algtop.hpp"
#include "mds/gcomplex.hpp"
#include "mds/reparam.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mds::cli {

struct CheckSummary {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  /// "<name>: <n> instances, <f> mismatches" plus the first failure, if any.
  std::string text() const;
};

/// (g1 * ... * gn) o (phi1 (x) ... (x) phin) == (g1 phi1) * ... * (gn phin).
CheckSummary check_interchange(std::uint64_t seed, std::size_t count);
/// ((g1 mu_l1) * ... * (gn mu_ln)) o mu_l == (g1 mu_{l1 l}) * ... * (gn mu_{ln l}).
CheckSummary check_scaling(std::uint64_t seed, std::size_t count);
/// p *_N q == (p mu_{1/2}) * (q mu_{1/2}).
CheckSummary check_normalized(std::uint64_t seed, std::size_t count);

/// Value of the word's path at u in [0,1], evaluated piece by piece.
std::vector<Rational> eval_word(const std::vector<WordPiece>& word, const Rational& u);
/// Empty when both renormalized forms agree with Gamma o phi at every
/// breakpoint of either side; otherwise the first offending abscissa.
std::string renormalize_mismatch(const std::vector<WordPiece>& word, const Clock& phi, const Renormalized& r);
CheckSummary check_renormalize(std::uint64_t seed, std::size_t count);

/// U M V == D, U and V invertible over Z, d_i | d_{i+1}, on random square matrices.
CheckSummary check_smith(std::uint64_t seed, std::size_t count, std::size_t size);
/// Empty when s is a valid Smith form of m.
std::string smith_mismatch(const IntMatrix& m, const SmithForm& s);

}  // namespace mds::cli
