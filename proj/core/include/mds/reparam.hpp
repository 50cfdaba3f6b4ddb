#pragma once

// Exact piecewise-linear Moore paths and reparametrizations.
//
// Every map is stored by its breakpoints in canonical form (strictly
// increasing abscissae, no collinear interior breakpoint), so two maps are
// equal as functions iff they compare equal structurally.

#include "mds/rational.hpp"

#include <span>
#include <vector>

namespace mds {

struct Breakpoint {
  Rational t;
  Rational v;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

class PLMap {
 public:
  /// Throws InvalidPLMap unless the abscissae are strictly increasing and nonempty.
  explicit PLMap(std::vector<Breakpoint> points);

  static PLMap linear(const Rational& t0, const Rational& v0, const Rational& t1, const Rational& v1);
  static PLMap constant(const Rational& t0, const Rational& t1, const Rational& value);
  static PLMap identity(const Rational& t0, const Rational& t1) { return linear(t0, t0, t1, t1); }

  const std::vector<Breakpoint>& points() const noexcept { return points_; }
  const Rational& domain_start() const noexcept { return points_.front().t; }
  const Rational& domain_end() const noexcept { return points_.back().t; }
  Rational domain_length() const { return domain_end() - domain_start(); }

  /// Throws DomainMismatch outside the domain.
  Rational operator()(const Rational& t) const;

  Rational min_value() const;
  Rational max_value() const;
  bool is_nondecreasing() const;
  bool is_constant() const;

  /// Restriction to [a, b] inside the domain.
  PLMap restrict(const Rational& a, const Rational& b) const;
  /// t -> f(t - dt) + dv.
  PLMap shifted(const Rational& dt, const Rational& dv) const;

  /// Least t with f(t) >= value (f non-decreasing, value within range).
  Rational first_reaching(const Rational& value) const;
  /// Greatest t with f(t) <= value (f non-decreasing, value within range).
  Rational last_below(const Rational& value) const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  std::vector<Breakpoint> points_;
};

/// mu_len : [0,len] -> [0,1], t -> t/len.
PLMap mu(const Rational& len);
/// Inverse of mu_len : [0,1] -> [0,len].
PLMap mu_inverse(const Rational& len);

/// Element of M(from, to): non-decreasing surjection [0,from] -> [0,to].
class Surjection {
 public:
  /// Throws NotMonotone / NotSurjective / DomainMismatch.
  explicit Surjection(PLMap map);
  /// Also checks the map is [0,from] -> [0,to].
  Surjection(PLMap map, const Rational& from, const Rational& to);

  const PLMap& map() const noexcept { return map_; }
  const Rational& from() const noexcept { return map_.domain_end(); }
  Rational to() const { return map_(map_.domain_end()); }

 private:
  PLMap map_;
};

/// Element of I(bound): non-decreasing map [0,1] -> [0,bound].
class Clock {
 public:
  Clock(PLMap map, Rational bound);

  const PLMap& map() const noexcept { return map_; }
  const Rational& bound() const noexcept { return bound_; }

 private:
  PLMap map_;
  Rational bound_;
};

/// Moore path [0,length] -> Q^k, one PLMap per coordinate.
class MoorePath {
 public:
  MoorePath(Rational length, std::vector<PLMap> components);

  static MoorePath constant(const Rational& length, std::vector<Rational> point);

  const Rational& length() const noexcept { return length_; }
  const std::vector<PLMap>& components() const noexcept { return components_; }
  std::size_t arity() const noexcept { return components_.size(); }

  std::vector<Rational> operator()(const Rational& t) const;
  std::vector<Rational> start() const { return (*this)(0); }
  std::vector<Rational> end() const { return (*this)(length_); }
  bool is_constant() const;

  /// Union of all component abscissae, sorted.
  std::vector<Rational> breakpoints() const;

  friend bool operator==(const MoorePath&, const MoorePath&) = default;

 private:
  Rational length_;
  std::vector<PLMap> components_;
};

/// g o f. Throws DomainMismatch unless range(f) lies in dom(g).
PLMap compose_pl(const PLMap& f, const PLMap& g);

/// gamma o phi, with phi : [0,l] -> [0, gamma.length()].
MoorePath reparametrize(const MoorePath& gamma, const PLMap& phi);

/// Strictly associative Moore composition. Throws EndpointMismatch.
MoorePath moore_compose(const MoorePath& p, const MoorePath& q);
MoorePath moore_compose(std::span<const MoorePath> paths);

/// phi_1 (x) ... (x) phi_n in M(sum from_i, sum to_i).
Surjection tensor_reparams(std::span<const Surjection> factors);

/// p *_N q for length-1 paths. Throws EndpointMismatch / DomainMismatch.
MoorePath normalized_compose(const MoorePath& p, const MoorePath& q);

bool is_regular(const MoorePath& p);

/// One factor gamma_i phi_i mu_{len_i} of a directed path of the form
/// (gamma_1 phi_1 mu_{l_1}) * ... * (gamma_n phi_n mu_{l_n}), sum l_i = 1.
struct WordPiece {
  MoorePath path;  // length 1
  Clock clock;     // in I(1)
  Rational share;  // > 0
};

/// The length-1 directed path described by a word. Throws IllFormedWord.
MoorePath assemble(std::span<const WordPiece> word);

struct Renormalized {
  /// Sub-word r+1..s of the input, shares rescaled to 1/(s-r).
  std::vector<WordPiece> word;
  /// mu_{s-r} o (psi - r); the input path satisfies Gamma o phi = assemble(word) o clock.
  Clock clock;
  /// Same path as explicit pieces gamma_i o phibar_i, shares L_i - L_{i-1}, identity outer clock.
  std::vector<WordPiece> pieces;
  std::size_t first = 0;  // r
  std::size_t last = 0;   // s
};

/// Normal form of Gamma o phi for a word Gamma and phi in I(1).
Renormalized renormalize(std::span<const WordPiece> word, const Clock& phi);

}  // namespace mds
