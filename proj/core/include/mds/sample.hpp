#pragma once

// Seeded random instances: PL maps, Moore paths, words and directed paths.

#include "mds/gcomplex.hpp"
#include "mds/pathspace.hpp"
#include "mds/reparam.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mds {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }

  /// In (0, 1], denominator at most max_den.
  Rational positive(int max_den = 6);
  /// In [-span, span], denominator at most max_den.
  Rational value(int span = 4, int max_den = 5);

  /// 0 = x0 < ... < x_pieces = len.
  std::vector<Rational> partition(const Rational& len, int pieces);

  /// Element of M(from, to); flat stretches allowed unless told otherwise.
  PLMap surjection(const Rational& from, const Rational& to, bool allow_flat = true);
  /// Non-decreasing [0,1] -> [0,bound], not necessarily onto.
  PLMap clock(const Rational& bound);
  /// PL path [0,len] -> Q^start.size() leaving `start`.
  MoorePath moore_path(const Rational& len, const std::vector<Rational>& start);

  /// Composable word of n one-coordinate pieces with shares summing to 1.
  std::vector<WordPiece> word(std::size_t n);

  /// Directed path of 1 to max_len letters from a random state with an exit.
  /// With `execution`, the clock runs onto [0,n].
  DirectedPathPL directed_path(const Complex& x, int max_len = 4, bool execution = false);

 private:
  std::mt19937_64 eng_;
};

}  // namespace mds
