#pragma once

// Finite thin diagrams of valued spaces and maps between them.

#include "mds/algtop.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mds {

/// A finite category with at most one morphism between two objects, presented
/// by generating arrows. Composites are the paths of generators.
class IndexCategory {
 public:
  struct Generator {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string label;
  };

  std::size_t add_object(std::string label);
  std::size_t add_generator(std::size_t from, std::size_t to, std::string label);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<std::size_t>& out(std::size_t i) const { return out_.at(i); }
  std::optional<std::size_t> find(const std::string& label) const;

  /// Objects reachable from i (i included), ascending. Valid after close().
  const std::vector<std::size_t>& above(std::size_t i) const { return above_.at(i); }
  bool has_morphism(std::size_t i, std::size_t j) const;
  std::size_t morphism_count() const;
  /// Objects in an order where every generator goes forward.
  const std::vector<std::size_t>& topological() const noexcept { return topo_; }

  /// Computes reachability. Throws NotFunctorial if generators form a cycle.
  void close();

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<Generator> generators_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> above_;
  std::vector<std::size_t> topo_;
};

/// A functor from a thin index category into valued spaces.
struct Diagram {
  IndexCategory index;
  Valuation valuation;
  std::vector<ValuedSpace> values;
  std::vector<ValuedMap> generator_maps;

  /// Closes the index and derives the map of every morphism. Throws
  /// NotFunctorial when two generator paths between the same objects disagree.
  void complete();

  /// Map of the unique morphism i -> j. Valid after complete().
  const ValuedMap& map(std::size_t i, std::size_t j) const;

  /// "object", "value" and "gen" lines in canonical order.
  std::string text() const;

 private:
  std::vector<std::map<std::size_t, ValuedMap>> maps_;
};

/// An index functor together with one component F(i) -> G(f(i)) per object.
struct DiagramMap {
  std::vector<std::size_t> on_objects;
  std::vector<ValuedMap> components;
  /// Per object: whether the component is a bijection of cubes before valuation.
  std::vector<bool> strict;
};

DiagramMap identity_map(const Diagram& d);

}  // namespace mds
