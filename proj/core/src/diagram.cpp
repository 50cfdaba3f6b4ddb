#include "mds/diagram.hpp"

#include "mds/error.hpp"

#include <algorithm>

namespace mds {

std::size_t IndexCategory::add_object(std::string label) {
  auto [it, fresh] = index_.emplace(label, labels_.size());
  if (!fresh) throw Error(ErrorKind::NotFunctorial, "duplicate object " + label);
  labels_.push_back(std::move(label));
  out_.emplace_back();
  return it->second;
}

std::size_t IndexCategory::add_generator(std::size_t from, std::size_t to, std::string label) {
  if (from >= size() || to >= size()) throw Error(ErrorKind::NotFunctorial, "generator between unknown objects");
  generators_.push_back({from, to, std::move(label)});
  out_[from].push_back(generators_.size() - 1);
  return generators_.size() - 1;
}

std::optional<std::size_t> IndexCategory::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool IndexCategory::has_morphism(std::size_t i, std::size_t j) const {
  const auto& a = above_.at(i);
  return std::binary_search(a.begin(), a.end(), j);
}

std::size_t IndexCategory::morphism_count() const {
  std::size_t n = 0;
  for (const auto& a : above_) n += a.size();
  return n;
}

void IndexCategory::close() {
  const std::size_t n = size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& g : generators_) {
    if (g.from == g.to) throw Error(ErrorKind::NotFunctorial, "generator loop at " + labels_[g.from]);
    ++indegree[g.to];
  }
  topo_.clear();
  std::vector<std::size_t> ready;
  for (std::size_t i = n; i-- > 0;)
    if (!indegree[i]) ready.push_back(i);
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    topo_.push_back(i);
    for (std::size_t g : out_[i])
      if (!--indegree[generators_[g].to]) ready.push_back(generators_[g].to);
  }
  if (topo_.size() != n) throw Error(ErrorKind::NotFunctorial, "generators form a cycle");

  above_.assign(n, {});
  for (std::size_t t = n; t-- > 0;) {
    std::size_t i = topo_[t];
    std::vector<std::size_t> a{i};
    for (std::size_t g : out_[i]) {
      const auto& b = above_[generators_[g].to];
      a.insert(a.end(), b.begin(), b.end());
    }
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    above_[i] = std::move(a);
  }
}

void Diagram::complete() {
  index.close();
  const std::size_t n = index.size();
  if (values.size() != n) throw Error(ErrorKind::NotFunctorial, "diagram has a value count different from its objects");
  if (generator_maps.size() != index.generators().size())
    throw Error(ErrorKind::NotFunctorial, "diagram has a map count different from its generators");

  std::vector<std::size_t> rank(n);
  for (std::size_t t = 0; t < n; ++t) rank[index.topological()[t]] = t;

  maps_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = maps_[i];
    row.emplace(i, identity(values[i]));
    std::vector<std::size_t> order = index.above(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    for (std::size_t a : order) {
      const ValuedMap& to_a = row.at(a);
      for (std::size_t g : index.out(a)) {
        const auto& gen = index.generators()[g];
        ValuedMap m = compose(generator_maps[g], to_a, values[gen.to]);
        auto [it, fresh] = row.emplace(gen.to, m);
        if (!fresh && it->second != m)
          throw Error(ErrorKind::NotFunctorial, "two composites " + index.label(i) + " -> " + index.label(gen.to) +
                                                    " differ: " + it->second.text() + " vs " + m.text());
      }
    }
  }
}

const ValuedMap& Diagram::map(std::size_t i, std::size_t j) const {
  auto it = maps_.at(i).find(j);
  if (it == maps_.at(i).end())
    throw Error(ErrorKind::NotFunctorial, "no morphism " + index.label(i) + " -> " + index.label(j));
  return it->second;
}

std::string Diagram::text() const {
  std::string out;
  for (const auto& l : index.labels()) out += "object " + l + "\n";
  for (std::size_t i = 0; i < index.size(); ++i) out += "value " + index.label(i) + " : " + values[i].text() + "\n";
  std::vector<std::size_t> gens(index.generators().size());
  for (std::size_t g = 0; g < gens.size(); ++g) gens[g] = g;
  const auto& gv = index.generators();
  std::stable_sort(gens.begin(), gens.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(gv[a].from, gv[a].to) < std::tie(gv[b].from, gv[b].to);
  });
  for (std::size_t g : gens)
    out += "gen " + index.label(gv[g].from) + " --" + gv[g].label + "--> " + index.label(gv[g].to) + " : " +
           generator_maps[g].text() + "\n";
  return out;
}

DiagramMap identity_map(const Diagram& d) {
  DiagramMap m;
  for (std::size_t i = 0; i < d.index.size(); ++i) {
    m.on_objects.push_back(i);
    m.components.push_back(identity(d.values[i]));
    m.strict.push_back(true);
  }
  return m;
}

}  // namespace mds
