#pragma once

// Open maps of diagrams and bisimulations between them.

#include "mds/algtop.hpp"
#include "mds/diagram.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mds {

/// Isomorphisms and morphism arithmetic in the category of valued spaces.
/// Finite sets get every bijection. Graded groups get signed permutations on
/// the free part and the identity on torsion, flagged incomplete as soon as
/// that misses automorphisms (free rank >= 2 or any torsion).
class ValueAdapter {
 public:
  enum class Kind { FiniteSets, GradedGroups };

  explicit ValueAdapter(const Valuation& val, std::size_t cap = 100000);

  Kind kind() const noexcept { return kind_; }

  struct Candidates {
    std::vector<ValuedMap> isos;
    bool incomplete = false;
  };
  /// Throws CapExceeded when more than `cap` candidates would be listed.
  Candidates iso_candidates(const ValuedSpace& a, const ValuedSpace& b) const;

  bool is_iso(const ValuedMap& m, const ValuedSpace& a, const ValuedSpace& b) const;
  /// Two-sided inverse of an iso a -> b, if there is one.
  std::optional<ValuedMap> inverse(const ValuedMap& m, const ValuedSpace& a, const ValuedSpace& b) const;
  ValuedMap compose(const ValuedMap& g, const ValuedMap& f, const ValuedSpace& target) const;
  bool equal(const ValuedMap& f, const ValuedMap& g) const { return f == g; }
  ValuedMap identity(const ValuedSpace& s) const { return mds::identity(s); }

 private:
  Kind kind_;
  std::size_t cap_;
};

struct OpenReport {
  enum class Failure { None, NotSurjective, NotIso, NotNatural, NotLiftable };

  bool open = false;
  Failure failure = Failure::None;
  /// Object or morphism at fault, with the values involved.
  std::string witness;

  std::string text() const;
};

/// Open with components that are bijections of cubes before valuation.
OpenReport check_open(const DiagramMap& m, const Diagram& src, const Diagram& dst);

/// Open once every component is read through the valuation. Checks, in order:
/// surjectivity on objects, components, naturality on every morphism, and
/// lifting of every morphism f(i) -> j' to some i -> i0 with f(i0) = j'.
OpenReport check_open_up_to_homotopy(const DiagramMap& m, const Diagram& src, const Diagram& dst,
                                     const ValueAdapter& adapter);

struct Triple {
  std::size_t i = 0;
  ValuedMap eta;
  std::size_t j = 0;
};

struct Bisimulation {
  std::vector<Triple> triples;
};

enum class Verdict { Yes, No, Unknown };

struct BisimResult {
  Verdict verdict = Verdict::Unknown;
  bool exact = false;
  Bisimulation relation;
  /// Refutation or refinement trace, one line per event.
  std::vector<std::string> trace;

  /// "BISIMILAR yes|no|unknown", then triples or the trace.
  std::string text(const Diagram& f, const Diagram& g) const;
};

struct BisimOptions {
  std::size_t cap = 2000000;  // candidate triples
  unsigned jobs = 1;
};

/// Greatest relation closed under the forth and back conditions, starting
/// from every candidate triple. A returned relation has been verified.
BisimResult bisimilar(const Diagram& f, const Diagram& g, const ValueAdapter& adapter, const BisimOptions& opts = {});

struct VerifyReport {
  bool ok = false;
  std::string clause;  // first violated clause
};

/// Checks coverage and both square-completion clauses over every morphism.
VerifyReport verify_bisimulation(const Bisimulation& r, const Diagram& f, const Diagram& g, const ValueAdapter& adapter);

/// R = {(p(k), q_k . p_k^-1, q(k))} for a span F <- H -> G of open maps.
/// Throws NotOpen if either leg is not open up to homotopy.
Bisimulation span_to_bisimulation(const DiagramMap& p, const DiagramMap& q, const Diagram& h, const Diagram& f,
                                  const Diagram& g, const ValueAdapter& adapter);

std::string to_string(Verdict v);

}  // namespace mds
