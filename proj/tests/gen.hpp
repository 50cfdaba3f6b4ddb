#pragma once

// Small random generators for property tests over exact rationals.

#include "mds/reparam.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace gen {

using mds::Breakpoint;
using mds::MoorePath;
using mds::PLMap;
using mds::Rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }

  /// Rational in (0, 1] with small denominator.
  Rational positive(int max_den = 6) {
    const int d = uniform(1, max_den);
    return Rational(uniform(1, d), d);
  }

  Rational value(int span = 4, int max_den = 5) {
    const int d = uniform(1, max_den);
    return Rational(uniform(-span * d, span * d), d);
  }

  /// Strictly increasing partition 0 = x0 < ... < xk = len with k pieces.
  std::vector<Rational> partition(const Rational& len, int pieces) {
    std::vector<Rational> weights;
    Rational total = 0;
    for (int i = 0; i < pieces; ++i) {
      weights.push_back(positive());
      total += weights.back();
    }
    std::vector<Rational> xs{0};
    Rational acc = 0;
    for (int i = 0; i < pieces; ++i) {
      acc += weights[i];
      xs.push_back(acc * len / total);
    }
    return xs;
  }

  /// Non-decreasing surjection [0,from] -> [0,to], possibly with flat parts.
  PLMap surjection(const Rational& from, const Rational& to, bool allow_flat = true) {
    if (from == 0) return PLMap({{0, 0}});
    const int pieces = uniform(1, 4);
    auto ts = partition(from, pieces);
    std::vector<Rational> inc;
    Rational total = 0;
    for (int i = 0; i < pieces; ++i) {
      Rational w = (allow_flat && uniform(0, 3) == 0) ? Rational(0) : positive();
      inc.push_back(w);
      total += w;
    }
    if (total == 0) {
      inc.back() = 1;
      total = 1;
    }
    std::vector<Breakpoint> pts{{0, 0}};
    Rational acc = 0;
    for (int i = 0; i < pieces; ++i) {
      acc += inc[i];
      pts.push_back({ts[i + 1], acc * to / total});
    }
    return PLMap(std::move(pts));
  }

  /// Non-decreasing map [0,1] -> [0,bound], not necessarily surjective.
  PLMap clock(const Rational& bound) {
    const int pieces = uniform(1, 4);
    auto ts = partition(1, pieces);
    std::vector<Rational> vs;
    for (int i = 0; i <= pieces; ++i) {
      const int d = uniform(1, 6);
      vs.push_back(Rational(uniform(0, d), d) * bound);
    }
    std::sort(vs.begin(), vs.end());
    std::vector<Breakpoint> pts;
    for (int i = 0; i <= pieces; ++i) pts.push_back({ts[i], vs[i]});
    return PLMap(std::move(pts));
  }

  /// Arbitrary PL path [0,len] -> Q^arity starting at `start`.
  MoorePath path(const Rational& len, std::size_t arity, const std::vector<Rational>& start) {
    if (len == 0) return MoorePath::constant(0, start);
    std::vector<PLMap> comps;
    for (std::size_t k = 0; k < arity; ++k) {
      const int pieces = uniform(1, 3);
      auto ts = partition(len, pieces);
      std::vector<Breakpoint> pts{{0, start[k]}};
      for (int i = 1; i <= pieces; ++i) pts.push_back({ts[i], value()});
      comps.emplace_back(std::move(pts));
    }
    return MoorePath(len, std::move(comps));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
