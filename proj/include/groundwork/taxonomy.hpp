#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace groundwork {

using ClassName = std::string;

/// Names of the built-in upper-level classes that rules refer to directly.
namespace cls {
inline constexpr std::string_view entity = "entity";
inline constexpr std::string_view continuant = "continuant";
inline constexpr std::string_view occurrent = "occurrent";
inline constexpr std::string_view independent_continuant = "independent continuant";
inline constexpr std::string_view specifically_dependent_continuant =
    "specifically dependent continuant";
inline constexpr std::string_view generically_dependent_continuant =
    "generically dependent continuant";
inline constexpr std::string_view material_entity = "material entity";
inline constexpr std::string_view immaterial_entity = "immaterial entity";
inline constexpr std::string_view object = "object";
inline constexpr std::string_view object_aggregate = "object aggregate";
inline constexpr std::string_view quality = "quality";
inline constexpr std::string_view relational_quality = "relational quality";
inline constexpr std::string_view realizable_entity = "realizable entity";
inline constexpr std::string_view disposition = "disposition";
inline constexpr std::string_view role = "role";
inline constexpr std::string_view function = "function";
inline constexpr std::string_view process = "process";
inline constexpr std::string_view site = "site";
}  // namespace cls

class TaxonomyError : public std::runtime_error {
 public:
  enum class Kind { duplicate_name, unknown_class, cycle, category_mismatch, invalid };

  TaxonomyError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct ClassNode {
  ClassName name;
  std::optional<ClassName> parent;  // absent only for the root
  std::set<ClassName> disjoint_with;
  bool builtin = false;

  bool operator==(const ClassNode&) const = default;
};

struct DeterminationLink {
  ClassName determinate_class;
  ClassName determinable_class;

  auto operator<=>(const DeterminationLink&) const = default;
};

/// Single-inheritance class tree with disjointness axioms and
/// determinate/determinable links. Values are immutable: every `with_*`
/// member returns a new taxonomy and leaves the receiver untouched.
class Taxonomy {
 public:
  /// The built-in upper-level hierarchy. Deterministic.
  static Taxonomy builtin();

  [[nodiscard]] Taxonomy with_class(const ClassName& name, const ClassName& parent) const&;
  [[nodiscard]] Taxonomy with_class(const ClassName& name, const ClassName& parent) &&;
  [[nodiscard]] Taxonomy with_disjoint(const ClassName& a, const ClassName& b) const&;
  [[nodiscard]] Taxonomy with_disjoint(const ClassName& a, const ClassName& b) &&;
  [[nodiscard]] Taxonomy with_determination(const ClassName& determinate,
                                            const ClassName& determinable) const&;
  [[nodiscard]] Taxonomy with_determination(const ClassName& determinate,
                                            const ClassName& determinable) &&;

  bool contains(std::string_view name) const;
  const ClassNode& node(std::string_view name) const;

  /// Reflexive and transitive: true iff `b` is `a` or on a's parent chain.
  bool is_subclass_of(std::string_view a, std::string_view b) const;

  /// True iff some ancestor-or-self of `a` is declared disjoint with some
  /// ancestor-or-self of `b`. Never true for a == b.
  bool are_disjoint(std::string_view a, std::string_view b) const;

  /// The first pair of declared-disjoint classes on `name`'s own ancestry,
  /// if any. A class with such a pair can have no instances.
  std::optional<std::pair<ClassName, ClassName>> conflicting_ancestors(
      std::string_view name) const;

  /// `name` first, root last.
  std::vector<ClassName> ancestry(std::string_view name) const;

  /// Classes reachable from `determinable` by following determination links
  /// downward, excluding `determinable` itself. Sorted.
  std::vector<ClassName> determinates_of(std::string_view determinable) const;
  /// Classes with a direct link to `determinable`. Sorted.
  std::vector<ClassName> direct_determinates_of(std::string_view determinable) const;

  const std::map<ClassName, ClassNode, std::less<>>& nodes() const { return nodes_; }
  const std::set<DeterminationLink>& determinations() const { return determinations_; }

  /// Declaration order of the user-added parts, for re-serialization.
  const std::vector<ClassName>& domain_classes() const { return domain_order_; }
  const std::vector<std::pair<ClassName, ClassName>>& declared_disjoint() const {
    return disjoint_order_;
  }
  const std::vector<DeterminationLink>& declared_determinations() const {
    return determination_order_;
  }

  bool operator==(const Taxonomy&) const = default;

 private:
  void add_class(const ClassName& name, const ClassName& parent, bool builtin);
  void add_disjoint(const ClassName& a, const ClassName& b, bool record);
  void add_determination(const ClassName& determinate, const ClassName& determinable);
  const ClassNode& require(std::string_view name) const;

  std::map<ClassName, ClassNode, std::less<>> nodes_;
  std::set<DeterminationLink> determinations_;
  std::vector<ClassName> domain_order_;
  std::vector<std::pair<ClassName, ClassName>> disjoint_order_;
  std::vector<DeterminationLink> determination_order_;
};

inline Taxonomy load_builtin_taxonomy() { return Taxonomy::builtin(); }

}  // namespace groundwork
