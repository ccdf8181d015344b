#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "groundwork/taxonomy.hpp"

namespace groundwork {

using EntityId = std::string;
using TimeIndex = std::size_t;

class ModelError : public std::runtime_error {
 public:
  enum class Kind {
    duplicate_id,
    unknown_class,
    unknown_entity,
    unknown_time,
    class_constraint,
    multiple_bearers,
    timeline,
    not_sdc,
    out_of_order,
  };

  ModelError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct TimePoint {
  std::string label;
  TimeIndex index = 0;

  bool operator==(const TimePoint&) const = default;
};

struct Entity {
  EntityId id;
  ClassName class_name;
  std::optional<int> source_line;

  bool operator==(const Entity& o) const { return id == o.id && class_name == o.class_name; }
};

enum class RelationKind { inheres_in, member_part_of, participates_in, towards, exists_at, realizes };

std::string_view to_string(RelationKind kind);

/// `time` is required for every kind except `realizes`. `exists_at` has an
/// empty object.
struct RelationAssertion {
  RelationKind kind = RelationKind::inheres_in;
  EntityId subject;
  EntityId object;
  std::optional<TimeIndex> time;
  std::optional<int> source_line;

  auto key() const { return std::tie(time, kind, subject, object); }
  bool operator==(const RelationAssertion& o) const { return key() == o.key(); }
  bool operator<(const RelationAssertion& o) const { return key() < o.key(); }
};

enum class GroundingKind { dependence, internal, external };

std::string_view to_string(GroundingKind kind);

/// A declared claim that `realizable` is grounded in `ground`.
struct GroundingAssertion {
  EntityId ground;
  EntityId realizable;
  GroundingKind kind = GroundingKind::dependence;
  std::optional<int> source_line;

  auto key() const { return std::tie(realizable, ground, kind); }
  bool operator==(const GroundingAssertion& o) const { return key() == o.key(); }
};

struct MereologicalGroundingAssertion {
  EntityId realizable;
  EntityId whole;
  EntityId part;
  std::optional<int> source_line;

  auto key() const { return std::tie(realizable, whole, part); }
  bool operator==(const MereologicalGroundingAssertion& o) const { return key() == o.key(); }
};

/// Time-filtered view of a world. Carries the entity classification so that
/// bearer and quality queries can be answered from the snapshot alone.
struct Snapshot {
  TimePoint time;
  std::vector<RelationAssertion> active;
  std::shared_ptr<const Taxonomy> taxonomy;
  std::shared_ptr<const std::map<EntityId, Entity, std::less<>>> entities;
};

using IdSetMap = std::map<EntityId, std::set<EntityId>>;

struct ChangeSet {
  TimePoint from;
  TimePoint to;
  IdSetMap lost_qualities;
  IdSetMap gained_qualities;
  IdSetMap lost_parts;
  IdSetMap gained_parts;
  IdSetMap lost_realizables;
  IdSetMap gained_realizables;

  bool empty() const;
  /// Lost or gained quality, or lost or gained member part.
  bool physically_changed(std::string_view bearer) const;

  bool operator==(const ChangeSet&) const = default;
};

/// Instances, a finite ordered timeline and time-indexed assertions.
/// Immutable; the `with_*` members return an updated copy (or move when
/// called on an rvalue).
class World {
 public:
  World();
  explicit World(Taxonomy taxonomy);

  [[nodiscard]] World with_timeline(const std::vector<std::string>& labels) const&;
  [[nodiscard]] World with_timeline(const std::vector<std::string>& labels) &&;
  [[nodiscard]] World with_instance(const EntityId& id, const ClassName& class_name,
                                    std::optional<int> line = std::nullopt) const&;
  [[nodiscard]] World with_instance(const EntityId& id, const ClassName& class_name,
                                    std::optional<int> line = std::nullopt) &&;
  [[nodiscard]] World with_relation(const RelationAssertion& assertion) const&;
  [[nodiscard]] World with_relation(const RelationAssertion& assertion) &&;
  [[nodiscard]] World with_grounding(const GroundingAssertion& grounding) const&;
  [[nodiscard]] World with_grounding(const GroundingAssertion& grounding) &&;
  [[nodiscard]] World with_mereological_grounding(
      const MereologicalGroundingAssertion& grounding) const&;
  [[nodiscard]] World with_mereological_grounding(
      const MereologicalGroundingAssertion& grounding) &&;

  const Taxonomy& taxonomy() const { return *taxonomy_; }
  const std::vector<TimePoint>& timeline() const { return timeline_; }
  const std::map<EntityId, Entity, std::less<>>& entities() const { return entities_; }
  /// Instance ids in declaration order.
  const std::vector<EntityId>& declaration_order() const { return declared_; }
  /// Sorted by (time, kind, subject, object); atemporal `realizes` first.
  const std::vector<RelationAssertion>& assertions() const { return assertions_; }
  const std::vector<GroundingAssertion>& groundings() const { return groundings_; }
  const std::vector<MereologicalGroundingAssertion>& mereological_groundings() const {
    return mereo_;
  }

  bool has_entity(std::string_view id) const { return entities_.contains(id); }
  const Entity& entity(std::string_view id) const;
  const ClassName& class_of(std::string_view id) const { return entity(id).class_name; }
  /// Class test through the taxonomy: is `id` an instance of `class_name`?
  bool instance_of(std::string_view id, std::string_view class_name) const;
  const TimePoint& time(std::string_view label) const;
  std::optional<TimeIndex> find_time(std::string_view label) const;

  std::optional<EntityId> bearer_at(std::string_view sdc, TimeIndex t) const;
  bool inheres_at(std::string_view sdc, std::string_view bearer, TimeIndex t) const;
  bool member_at(std::string_view part, std::string_view whole, TimeIndex t) const;
  bool participates_at(std::string_view participant, std::string_view process,
                       TimeIndex t) const;
  /// SDCs inhering in `bearer` at `t`, sorted.
  std::vector<EntityId> inherents_at(std::string_view bearer, TimeIndex t) const;
  /// Every (sdc, bearer) pair at `t`.
  const std::map<EntityId, EntityId>& inherence_at(TimeIndex t) const;

  bool operator==(const World& o) const;

 private:
  void add_instance(const EntityId& id, const ClassName& class_name, std::optional<int> line);
  void add_relation(RelationAssertion assertion);
  void insert_assertion(RelationAssertion assertion);
  void check_grounding(const GroundingAssertion& g) const;
  void check_mereological(const MereologicalGroundingAssertion& g) const;
  void require_entity(std::string_view id) const;

  std::shared_ptr<const Taxonomy> taxonomy_;
  std::vector<TimePoint> timeline_;
  std::map<EntityId, Entity, std::less<>> entities_;
  std::vector<EntityId> declared_;
  std::vector<RelationAssertion> assertions_;
  std::vector<GroundingAssertion> groundings_;
  std::vector<MereologicalGroundingAssertion> mereo_;

  // Per-time indices, rebuilt incrementally as assertions are added.
  std::vector<std::map<EntityId, EntityId>> bearer_by_time_;
  std::set<std::tuple<TimeIndex, EntityId, EntityId>> membership_;
  std::set<std::tuple<TimeIndex, EntityId, EntityId>> participation_;
};

Snapshot snapshot(const World& world, std::string_view time_label);
Snapshot snapshot(const World& world, TimeIndex t);

/// Categorized differences between two snapshots. Requires s1 not later than s2.
ChangeSet diff_snapshots(const Snapshot& s1, const Snapshot& s2);
/// Same categorization without the ordering precondition.
ChangeSet diff_states(const Snapshot& s1, const Snapshot& s2);

std::optional<EntityId> bearer_of(const Snapshot& snapshot, std::string_view sdc);
std::set<EntityId> qualities_of(const Snapshot& snapshot, std::string_view bearer);

}  // namespace groundwork
