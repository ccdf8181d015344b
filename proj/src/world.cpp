#include "groundwork/world.hpp"

#include <algorithm>

namespace groundwork {

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::inheres_in: return "inheres_in";
    case RelationKind::member_part_of: return "member_part_of";
    case RelationKind::participates_in: return "participates_in";
    case RelationKind::towards: return "towards";
    case RelationKind::exists_at: return "exists";
    case RelationKind::realizes: return "realizes";
  }
  return "?";
}

std::string_view to_string(GroundingKind kind) {
  switch (kind) {
    case GroundingKind::dependence: return "dependence";
    case GroundingKind::internal: return "internal";
    case GroundingKind::external: return "external";
  }
  return "?";
}

namespace {

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

World::World() : World(Taxonomy::builtin()) {}

World::World(Taxonomy taxonomy)
    : taxonomy_(std::make_shared<const Taxonomy>(std::move(taxonomy))) {}

const Entity& World::entity(std::string_view id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) {
    throw ModelError(ModelError::Kind::unknown_entity, "unknown entity " + quote(id));
  }
  return it->second;
}

void World::require_entity(std::string_view id) const { (void)entity(id); }

bool World::instance_of(std::string_view id, std::string_view class_name) const {
  return taxonomy_->is_subclass_of(class_of(id), class_name);
}

std::optional<TimeIndex> World::find_time(std::string_view label) const {
  for (const auto& tp : timeline_) {
    if (tp.label == label) return tp.index;
  }
  return std::nullopt;
}

const TimePoint& World::time(std::string_view label) const {
  if (auto t = find_time(label)) return timeline_[*t];
  throw ModelError(ModelError::Kind::unknown_time, "unknown time point " + quote(label));
}

World World::with_timeline(const std::vector<std::string>& labels) const& {
  return World(*this).with_timeline(labels);
}

World World::with_timeline(const std::vector<std::string>& labels) && {
  if (!timeline_.empty()) {
    throw ModelError(ModelError::Kind::timeline, "timeline is already declared");
  }
  if (labels.empty()) {
    throw ModelError(ModelError::Kind::timeline, "timeline needs at least one time point");
  }
  for (auto it = labels.begin(); it != labels.end(); ++it) {
    if (std::find(labels.begin(), it, *it) != it) {
      throw ModelError(ModelError::Kind::timeline, "duplicate time point " + quote(*it));
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) timeline_.push_back(TimePoint{labels[i], i});
  bearer_by_time_.assign(timeline_.size(), {});
  return std::move(*this);
}

void World::add_instance(const EntityId& id, const ClassName& class_name,
                         std::optional<int> line) {
  if (entities_.contains(id)) {
    throw ModelError(ModelError::Kind::duplicate_id, "entity " + quote(id) + " already declared");
  }
  if (!taxonomy_->contains(class_name)) {
    throw ModelError(ModelError::Kind::unknown_class, "unknown class " + quote(class_name));
  }
  entities_.emplace(id, Entity{id, class_name, line});
  declared_.push_back(id);
}

World World::with_instance(const EntityId& id, const ClassName& class_name,
                           std::optional<int> line) const& {
  return World(*this).with_instance(id, class_name, line);
}

World World::with_instance(const EntityId& id, const ClassName& class_name,
                           std::optional<int> line) && {
  add_instance(id, class_name, line);
  return std::move(*this);
}

void World::insert_assertion(RelationAssertion assertion) {
  auto it = std::lower_bound(assertions_.begin(), assertions_.end(), assertion);
  if (it != assertions_.end() && *it == assertion) return;
  const auto t = assertion.time;
  switch (assertion.kind) {
    case RelationKind::inheres_in:
      bearer_by_time_[*t].emplace(assertion.subject, assertion.object);
      break;
    case RelationKind::member_part_of:
      membership_.emplace(*t, assertion.subject, assertion.object);
      break;
    case RelationKind::participates_in:
      participation_.emplace(*t, assertion.subject, assertion.object);
      break;
    default: break;
  }
  assertions_.insert(it, std::move(assertion));
}

void World::add_relation(RelationAssertion a) {
  const auto& tax = *taxonomy_;
  auto violation = [&](const std::string& msg) {
    throw ModelError(ModelError::Kind::class_constraint,
                     std::string(to_string(a.kind)) + "(" + a.subject +
                         (a.object.empty() ? "" : ", " + a.object) + "): " + msg);
  };
  auto is_a = [&](const EntityId& id, std::string_view c) {
    return tax.is_subclass_of(class_of(id), c);
  };

  require_entity(a.subject);
  if (a.kind == RelationKind::exists_at) {
    a.object.clear();
  } else {
    require_entity(a.object);
  }
  if (a.kind == RelationKind::realizes) {
    if (a.time) violation("realizes is atemporal");
  } else {
    if (!a.time) violation("a time point is required");
    if (*a.time >= timeline_.size()) {
      throw ModelError(ModelError::Kind::unknown_time,
                       "time index " + std::to_string(*a.time) + " is outside the timeline");
    }
  }

  switch (a.kind) {
    case RelationKind::inheres_in: {
      if (!is_a(a.subject, cls::specifically_dependent_continuant)) {
        violation("subject must be a specifically dependent continuant");
      }
      if (!is_a(a.object, cls::independent_continuant)) {
        violation("bearer must be an independent continuant");
      }
      const auto& bearers = bearer_by_time_[*a.time];
      if (auto it = bearers.find(a.subject); it != bearers.end() && it->second != a.object) {
        throw ModelError(ModelError::Kind::multiple_bearers,
                         quote(a.subject) + " already inheres in " + quote(it->second) + " at " +
                             timeline_[*a.time].label);
      }
      break;
    }
    case RelationKind::member_part_of:
      if (!is_a(a.object, cls::object_aggregate)) violation("whole must be an object aggregate");
      if (a.subject == a.object) violation("an aggregate is not its own member part");
      break;
    case RelationKind::participates_in:
      if (!is_a(a.subject, cls::continuant)) violation("participant must be a continuant");
      if (!is_a(a.object, cls::occurrent)) violation("participated entity must be an occurrent");
      break;
    case RelationKind::realizes:
      if (!is_a(a.subject, cls::process)) violation("realizing entity must be a process");
      if (!is_a(a.object, cls::realizable_entity)) {
        violation("realized entity must be a realizable entity");
      }
      break;
    case RelationKind::towards:
      if (!is_a(a.subject, cls::relational_quality)) {
        violation("subject must be a relational quality");
      }
      break;
    case RelationKind::exists_at: break;
  }

  if (a.kind == RelationKind::inheres_in) {
    // Existence closure for both endpoints.
    insert_assertion(RelationAssertion{RelationKind::exists_at, a.subject, {}, a.time,
                                       a.source_line});
    insert_assertion(RelationAssertion{RelationKind::exists_at, a.object, {}, a.time,
                                       a.source_line});
  }
  insert_assertion(std::move(a));
}

World World::with_relation(const RelationAssertion& assertion) const& {
  return World(*this).with_relation(assertion);
}

World World::with_relation(const RelationAssertion& assertion) && {
  add_relation(assertion);
  return std::move(*this);
}

void World::check_grounding(const GroundingAssertion& g) const {
  require_entity(g.ground);
  require_entity(g.realizable);
  if (g.ground == g.realizable) {
    throw ModelError(ModelError::Kind::class_constraint,
                     "grounds(" + g.ground + ", " + g.realizable +
                         "): an entity cannot ground itself");
  }
  if (!instance_of(g.realizable, cls::realizable_entity)) {
    throw ModelError(ModelError::Kind::class_constraint,
                     "grounds(" + g.ground + ", " + g.realizable + "): " + quote(g.realizable) +
                         " is not a realizable entity");
  }
  if (!instance_of(g.ground, cls::specifically_dependent_continuant)) {
    throw ModelError(ModelError::Kind::class_constraint,
                     "grounds(" + g.ground + ", " + g.realizable + "): " + quote(g.ground) +
                         " is not a specifically dependent continuant");
  }
}

World World::with_grounding(const GroundingAssertion& grounding) const& {
  return World(*this).with_grounding(grounding);
}

World World::with_grounding(const GroundingAssertion& grounding) && {
  check_grounding(grounding);
  if (std::find(groundings_.begin(), groundings_.end(), grounding) == groundings_.end()) {
    groundings_.push_back(grounding);
  }
  return std::move(*this);
}

void World::check_mereological(const MereologicalGroundingAssertion& g) const {
  require_entity(g.realizable);
  require_entity(g.whole);
  require_entity(g.part);
  const std::string head = "mereo_grounds(" + g.realizable + ", " + g.whole + ", " + g.part + "): ";
  if (!instance_of(g.realizable, cls::realizable_entity)) {
    throw ModelError(ModelError::Kind::class_constraint,
                     head + quote(g.realizable) + " is not a realizable entity");
  }
  if (!instance_of(g.whole, cls::material_entity)) {
    throw ModelError(ModelError::Kind::class_constraint,
                     head + quote(g.whole) + " is not a material entity");
  }
  if (g.whole == g.part) {
    throw ModelError(ModelError::Kind::class_constraint, head + "part must differ from whole");
  }
}

World World::with_mereological_grounding(const MereologicalGroundingAssertion& grounding) const& {
  return World(*this).with_mereological_grounding(grounding);
}

World World::with_mereological_grounding(const MereologicalGroundingAssertion& grounding) && {
  check_mereological(grounding);
  if (std::find(mereo_.begin(), mereo_.end(), grounding) == mereo_.end()) {
    mereo_.push_back(grounding);
  }
  return std::move(*this);
}

std::optional<EntityId> World::bearer_at(std::string_view sdc, TimeIndex t) const {
  if (t >= bearer_by_time_.size()) return std::nullopt;
  const auto& m = bearer_by_time_[t];
  if (auto it = m.find(std::string(sdc)); it != m.end()) return it->second;
  return std::nullopt;
}

bool World::inheres_at(std::string_view sdc, std::string_view bearer, TimeIndex t) const {
  auto b = bearer_at(sdc, t);
  return b && *b == bearer;
}

bool World::member_at(std::string_view part, std::string_view whole, TimeIndex t) const {
  return membership_.contains({t, std::string(part), std::string(whole)});
}

bool World::participates_at(std::string_view participant, std::string_view process,
                            TimeIndex t) const {
  return participation_.contains({t, std::string(participant), std::string(process)});
}

std::vector<EntityId> World::inherents_at(std::string_view bearer, TimeIndex t) const {
  std::vector<EntityId> out;
  if (t >= bearer_by_time_.size()) return out;
  for (const auto& [sdc, b] : bearer_by_time_[t]) {
    if (b == bearer) out.push_back(sdc);
  }
  return out;
}

const std::map<EntityId, EntityId>& World::inherence_at(TimeIndex t) const {
  if (t >= bearer_by_time_.size()) {
    throw ModelError(ModelError::Kind::unknown_time,
                     "time index " + std::to_string(t) + " is outside the timeline");
  }
  return bearer_by_time_[t];
}

bool World::operator==(const World& o) const {
  return *taxonomy_ == *o.taxonomy_ && timeline_ == o.timeline_ && entities_ == o.entities_ &&
         assertions_ == o.assertions_ && groundings_ == o.groundings_ && mereo_ == o.mereo_;
}

// --- snapshots -------------------------------------------------------------

Snapshot snapshot(const World& world, TimeIndex t) {
  if (t >= world.timeline().size()) {
    throw ModelError(ModelError::Kind::unknown_time,
                     "time index " + std::to_string(t) + " is outside the timeline");
  }
  Snapshot s;
  s.time = world.timeline()[t];
  for (const auto& a : world.assertions()) {
    if (!a.time || *a.time == t) s.active.push_back(a);
  }
  s.taxonomy = std::make_shared<const Taxonomy>(world.taxonomy());
  s.entities = std::make_shared<const std::map<EntityId, Entity, std::less<>>>(world.entities());
  return s;
}

Snapshot snapshot(const World& world, std::string_view time_label) {
  return snapshot(world, world.time(time_label).index);
}

namespace {

const Entity& snapshot_entity(const Snapshot& s, std::string_view id) {
  auto it = s.entities->find(id);
  if (it == s.entities->end()) {
    throw ModelError(ModelError::Kind::unknown_entity, "unknown entity " + quote(id));
  }
  return it->second;
}

struct BearerState {
  IdSetMap qualities;
  IdSetMap realizables;
  IdSetMap parts;
};

BearerState bearer_state(const Snapshot& s) {
  BearerState st;
  for (const auto& a : s.active) {
    if (a.kind == RelationKind::inheres_in) {
      const auto& c = snapshot_entity(s, a.subject).class_name;
      if (s.taxonomy->is_subclass_of(c, cls::quality)) {
        st.qualities[a.object].insert(a.subject);
      } else if (s.taxonomy->is_subclass_of(c, cls::realizable_entity)) {
        st.realizables[a.object].insert(a.subject);
      }
    } else if (a.kind == RelationKind::member_part_of) {
      st.parts[a.object].insert(a.subject);
    }
  }
  return st;
}

void subtract(const IdSetMap& from, const IdSetMap& minus, IdSetMap& out) {
  for (const auto& [bearer, ids] : from) {
    auto other = minus.find(bearer);
    std::set<EntityId> diff;
    for (const auto& id : ids) {
      if (other == minus.end() || !other->second.contains(id)) diff.insert(id);
    }
    if (!diff.empty()) out.emplace(bearer, std::move(diff));
  }
}

}  // namespace

ChangeSet diff_states(const Snapshot& s1, const Snapshot& s2) {
  ChangeSet cs;
  cs.from = s1.time;
  cs.to = s2.time;
  const auto a = bearer_state(s1);
  const auto b = bearer_state(s2);
  subtract(a.qualities, b.qualities, cs.lost_qualities);
  subtract(b.qualities, a.qualities, cs.gained_qualities);
  subtract(a.parts, b.parts, cs.lost_parts);
  subtract(b.parts, a.parts, cs.gained_parts);
  subtract(a.realizables, b.realizables, cs.lost_realizables);
  subtract(b.realizables, a.realizables, cs.gained_realizables);
  return cs;
}

ChangeSet diff_snapshots(const Snapshot& s1, const Snapshot& s2) {
  if (s1.time.index > s2.time.index) {
    throw ModelError(ModelError::Kind::out_of_order,
                     "snapshot " + s1.time.label + " does not precede " + s2.time.label);
  }
  return diff_states(s1, s2);
}

bool ChangeSet::empty() const {
  return lost_qualities.empty() && gained_qualities.empty() && lost_parts.empty() &&
         gained_parts.empty() && lost_realizables.empty() && gained_realizables.empty();
}

bool ChangeSet::physically_changed(std::string_view bearer) const {
  const std::string b(bearer);
  return lost_qualities.contains(b) || gained_qualities.contains(b) || lost_parts.contains(b) ||
         gained_parts.contains(b);
}

std::optional<EntityId> bearer_of(const Snapshot& s, std::string_view sdc) {
  const auto& e = snapshot_entity(s, sdc);
  if (!s.taxonomy->is_subclass_of(e.class_name, cls::specifically_dependent_continuant)) {
    throw ModelError(ModelError::Kind::not_sdc,
                     quote(sdc) + " is not a specifically dependent continuant");
  }
  for (const auto& a : s.active) {
    if (a.kind == RelationKind::inheres_in && a.subject == sdc) return a.object;
  }
  return std::nullopt;
}

std::set<EntityId> qualities_of(const Snapshot& s, std::string_view bearer) {
  (void)snapshot_entity(s, bearer);
  std::set<EntityId> out;
  for (const auto& a : s.active) {
    if (a.kind != RelationKind::inheres_in || a.object != bearer) continue;
    if (s.taxonomy->is_subclass_of(snapshot_entity(s, a.subject).class_name, cls::quality)) {
      out.insert(a.subject);
    }
  }
  return out;
}

}  // namespace groundwork
