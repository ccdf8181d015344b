#include "groundwork/taxonomy.hpp"

#include <algorithm>
#include <deque>

namespace groundwork {

namespace {

struct BuiltinEdge {
  std::string_view name;
  std::string_view parent;
};

// Parent-before-child order.
constexpr BuiltinEdge kBuiltinTree[] = {
    {"continuant", "entity"},
    {"occurrent", "entity"},
    {"independent continuant", "continuant"},
    {"specifically dependent continuant", "continuant"},
    {"generically dependent continuant", "continuant"},
    {"material entity", "independent continuant"},
    {"immaterial entity", "independent continuant"},
    {"object", "material entity"},
    {"object aggregate", "material entity"},
    {"fiat object part", "material entity"},
    {"site", "immaterial entity"},
    {"continuant fiat boundary", "immaterial entity"},
    {"fiat point", "continuant fiat boundary"},
    {"fiat line", "continuant fiat boundary"},
    {"fiat surface", "continuant fiat boundary"},
    {"spatial region", "immaterial entity"},
    {"zero-dimensional spatial region", "spatial region"},
    {"one-dimensional spatial region", "spatial region"},
    {"two-dimensional spatial region", "spatial region"},
    {"three-dimensional spatial region", "spatial region"},
    {"quality", "specifically dependent continuant"},
    {"relational quality", "quality"},
    {"realizable entity", "specifically dependent continuant"},
    {"disposition", "realizable entity"},
    {"function", "disposition"},
    {"role", "realizable entity"},
    {"process", "occurrent"},
    {"history", "process"},
    {"process boundary", "occurrent"},
    {"temporal region", "occurrent"},
    {"zero-dimensional temporal region", "temporal region"},
    {"temporal instant", "zero-dimensional temporal region"},
    {"one-dimensional temporal region", "temporal region"},
    {"temporal interval", "one-dimensional temporal region"},
    {"spatiotemporal region", "occurrent"},
};

constexpr std::pair<std::string_view, std::string_view> kBuiltinDisjoint[] = {
    {"continuant", "occurrent"},
    {"independent continuant", "specifically dependent continuant"},
    {"independent continuant", "generically dependent continuant"},
    {"specifically dependent continuant", "generically dependent continuant"},
    {"material entity", "immaterial entity"},
    {"quality", "realizable entity"},
    {"disposition", "role"},
};

}  // namespace

Taxonomy Taxonomy::builtin() {
  Taxonomy t;
  t.nodes_.emplace(std::string(cls::entity),
                   ClassNode{std::string(cls::entity), std::nullopt, {}, true});
  for (const auto& edge : kBuiltinTree) {
    t.add_class(std::string(edge.name), std::string(edge.parent), true);
  }
  for (const auto& [a, b] : kBuiltinDisjoint) {
    t.add_disjoint(std::string(a), std::string(b), false);
  }
  return t;
}

const ClassNode& Taxonomy::require(std::string_view name) const {
  auto it = nodes_.find(name);
  if (it == nodes_.end()) {
    throw TaxonomyError(TaxonomyError::Kind::unknown_class,
                        "unknown class '" + std::string(name) + "'");
  }
  return it->second;
}

bool Taxonomy::contains(std::string_view name) const { return nodes_.contains(name); }

const ClassNode& Taxonomy::node(std::string_view name) const { return require(name); }

void Taxonomy::add_class(const ClassName& name, const ClassName& parent, bool builtin) {
  if (nodes_.contains(name)) {
    throw TaxonomyError(TaxonomyError::Kind::duplicate_name,
                        "class '" + name + "' is already declared");
  }
  require(parent);
  if (name.empty()) {
    throw TaxonomyError(TaxonomyError::Kind::invalid, "class name must not be empty");
  }
  nodes_.emplace(name, ClassNode{name, parent, {}, builtin});
  if (!builtin) domain_order_.push_back(name);
}

void Taxonomy::add_disjoint(const ClassName& a, const ClassName& b, bool record) {
  require(a);
  require(b);
  if (a == b) {
    throw TaxonomyError(TaxonomyError::Kind::invalid,
                        "class '" + a + "' cannot be disjoint with itself");
  }
  bool fresh = nodes_.find(a)->second.disjoint_with.insert(b).second;
  nodes_.find(b)->second.disjoint_with.insert(a);
  if (record && fresh) disjoint_order_.emplace_back(a, b);
}

void Taxonomy::add_determination(const ClassName& determinate, const ClassName& determinable) {
  require(determinate);
  require(determinable);
  if (determinate == determinable) {
    throw TaxonomyError(TaxonomyError::Kind::cycle,
                        "class '" + determinate + "' cannot be its own determinable");
  }
  const bool qualities = is_subclass_of(determinate, cls::quality) &&
                         is_subclass_of(determinable, cls::quality);
  const bool realizables = is_subclass_of(determinate, cls::realizable_entity) &&
                           is_subclass_of(determinable, cls::realizable_entity);
  if (!qualities && !realizables) {
    throw TaxonomyError(TaxonomyError::Kind::category_mismatch,
                        "determination '" + determinate + "' -> '" + determinable +
                            "' must link two qualities or two realizable entities");
  }
  DeterminationLink link{determinate, determinable};
  if (determinations_.contains(link)) return;

  // Adding determinate -> determinable closes a cycle iff `determinate` is
  // already reachable upward from `determinable`.
  std::deque<ClassName> frontier{determinable};
  std::set<ClassName> seen{determinable};
  while (!frontier.empty()) {
    ClassName current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& l : determinations_) {
      if (l.determinate_class != current) continue;
      if (l.determinable_class == determinate) {
        throw TaxonomyError(TaxonomyError::Kind::cycle,
                            "determination '" + determinate + "' -> '" + determinable +
                                "' introduces a cycle");
      }
      if (seen.insert(l.determinable_class).second) frontier.push_back(l.determinable_class);
    }
  }
  determinations_.insert(link);
  determination_order_.push_back(std::move(link));
}

Taxonomy Taxonomy::with_class(const ClassName& name, const ClassName& parent) const& {
  return Taxonomy(*this).with_class(name, parent);
}
Taxonomy Taxonomy::with_class(const ClassName& name, const ClassName& parent) && {
  add_class(name, parent, false);
  return std::move(*this);
}
Taxonomy Taxonomy::with_disjoint(const ClassName& a, const ClassName& b) const& {
  return Taxonomy(*this).with_disjoint(a, b);
}
Taxonomy Taxonomy::with_disjoint(const ClassName& a, const ClassName& b) && {
  add_disjoint(a, b, true);
  return std::move(*this);
}
Taxonomy Taxonomy::with_determination(const ClassName& determinate,
                                      const ClassName& determinable) const& {
  return Taxonomy(*this).with_determination(determinate, determinable);
}
Taxonomy Taxonomy::with_determination(const ClassName& determinate,
                                      const ClassName& determinable) && {
  add_determination(determinate, determinable);
  return std::move(*this);
}

std::vector<ClassName> Taxonomy::ancestry(std::string_view name) const {
  std::vector<ClassName> chain;
  const ClassNode* n = &require(name);
  while (true) {
    chain.push_back(n->name);
    if (!n->parent) break;
    n = &require(*n->parent);
  }
  return chain;
}

bool Taxonomy::is_subclass_of(std::string_view a, std::string_view b) const {
  require(b);
  const ClassNode* n = &require(a);
  while (true) {
    if (n->name == b) return true;
    if (!n->parent) return false;
    n = &require(*n->parent);
  }
}

bool Taxonomy::are_disjoint(std::string_view a, std::string_view b) const {
  if (a == b) {
    require(a);
    return false;
  }
  const auto chain_a = ancestry(a);
  const auto chain_b = ancestry(b);
  for (const auto& x : chain_a) {
    const auto& dis = require(x).disjoint_with;
    for (const auto& y : chain_b) {
      if (dis.contains(y)) return true;
    }
  }
  return false;
}

std::optional<std::pair<ClassName, ClassName>> Taxonomy::conflicting_ancestors(
    std::string_view name) const {
  const auto chain = ancestry(name);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& dis = require(chain[i]).disjoint_with;
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      if (dis.contains(chain[j])) return std::pair{chain[i], chain[j]};
    }
  }
  return std::nullopt;
}

std::vector<ClassName> Taxonomy::direct_determinates_of(std::string_view determinable) const {
  require(determinable);
  std::vector<ClassName> out;
  for (const auto& l : determinations_) {
    if (l.determinable_class == determinable) out.push_back(l.determinate_class);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClassName> Taxonomy::determinates_of(std::string_view determinable) const {
  require(determinable);
  std::set<ClassName> found;
  std::deque<ClassName> frontier{ClassName(determinable)};
  while (!frontier.empty()) {
    ClassName current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& l : determinations_) {
      if (l.determinable_class == current && found.insert(l.determinate_class).second) {
        frontier.push_back(l.determinate_class);
      }
    }
  }
  found.erase(ClassName(determinable));
  return {found.begin(), found.end()};
}

}  // namespace groundwork
