#include "groundwork/grounding.hpp"

#include <algorithm>

namespace groundwork {

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::satisfied: return "satisfied";
    case VerdictStatus::violated: return "violated";
    case VerdictStatus::undetermined: return "undetermined";
  }
  return "?";
}

std::string_view to_string(MereologicalStatus status) {
  switch (status) {
    case MereologicalStatus::supported: return "supported";
    case MereologicalStatus::refuted: return "refuted";
    case MereologicalStatus::undetermined: return "undetermined";
  }
  return "?";
}

std::string_view to_string(GroundingClass kind) {
  return kind == GroundingClass::internal ? "internal" : "external";
}

std::vector<TimePoint> GroundingVerdict::failing_times() const {
  std::vector<TimePoint> out;
  for (const auto& e : evidence) {
    if (!e.pass && (out.empty() || out.back().index != e.time.index)) out.push_back(e.time);
  }
  return out;
}

namespace {

void require_dependence_preconditions(const World& world, std::string_view x,
                                      std::string_view y) {
  if (!world.has_entity(x)) throw GroundingError("unknown entity '" + std::string(x) + "'");
  if (!world.has_entity(y)) throw GroundingError("unknown entity '" + std::string(y) + "'");
  if (x == y) {
    throw GroundingError("grounding is irreflexive: '" + std::string(x) +
                         "' cannot ground itself");
  }
  if (!world.instance_of(x, cls::realizable_entity)) {
    throw GroundingError("'" + std::string(x) + "' is not a realizable entity");
  }
  if (!world.instance_of(y, cls::specifically_dependent_continuant)) {
    throw GroundingError("'" + std::string(y) + "' is not a specifically dependent continuant");
  }
}

/// y itself plus every instance of a determinate class of y's class.
std::vector<EntityId> ground_stand_ins(const World& world, std::string_view x,
                                       std::string_view y) {
  std::vector<EntityId> out{EntityId(y)};
  const auto determinates = world.taxonomy().determinates_of(world.class_of(y));
  if (determinates.empty()) return out;
  for (const auto& [id, e] : world.entities()) {
    if (id == x || id == y) continue;
    for (const auto& d : determinates) {
      if (world.taxonomy().is_subclass_of(e.class_name, d)) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

bool bearer_compatible(const World& world, std::string_view ground,
                       std::string_view ground_bearer, std::string_view bearer, TimeIndex t) {
  if (ground_bearer == bearer) return true;
  return world.instance_of(ground, cls::relational_quality) &&
         world.instance_of(ground_bearer, cls::object_aggregate) &&
         world.member_at(bearer, ground_bearer, t);
}

}  // namespace

GroundingVerdict check_dependence_grounding(const World& world, std::string_view x,
                                            std::string_view y) {
  require_dependence_preconditions(world, x, y);
  const auto stand_ins = ground_stand_ins(world, x, y);

  GroundingVerdict verdict;
  for (const auto& tp : world.timeline()) {
    const auto bearer = world.bearer_at(x, tp.index);
    if (!bearer) continue;

    bool present = false;
    bool compatible = false;
    for (const auto& g : stand_ins) {
      const auto gb = world.bearer_at(g, tp.index);
      if (!gb) continue;
      present = true;
      if (bearer_compatible(world, g, *gb, *bearer, tp.index)) {
        compatible = true;
        break;
      }
    }
    verdict.evidence.push_back({tp, "c1", present});
    if (present) verdict.evidence.push_back({tp, "c2", compatible});
  }

  if (verdict.evidence.empty()) {
    verdict.status = VerdictStatus::undetermined;
    verdict.notes = "'" + std::string(x) + "' never inheres in a bearer";
  } else if (std::any_of(verdict.evidence.begin(), verdict.evidence.end(),
                         [](const Evidence& e) { return !e.pass; })) {
    verdict.status = VerdictStatus::violated;
    verdict.notes = "ground absent or held by an incompatible bearer";
  } else {
    verdict.status = VerdictStatus::satisfied;
  }
  return verdict;
}

GroundingClass classify_grounding(const World& world, std::string_view x, std::string_view y) {
  require_dependence_preconditions(world, x, y);
  return world.instance_of(y, cls::relational_quality) ? GroundingClass::external
                                                       : GroundingClass::internal;
}

MereologicalVerdict check_mereological_grounding(const World& world, std::string_view x,
                                                 std::string_view whole,
                                                 std::string_view part) {
  for (auto id : {x, whole, part}) {
    if (!world.has_entity(id)) throw GroundingError("unknown entity '" + std::string(id) + "'");
  }
  if (!world.instance_of(x, cls::realizable_entity)) {
    throw GroundingError("'" + std::string(x) + "' is not a realizable entity");
  }
  if (!world.instance_of(whole, cls::material_entity)) {
    throw GroundingError("'" + std::string(whole) + "' is not a material entity");
  }

  MereologicalVerdict verdict;
  const auto& timeline = world.timeline();
  for (const auto& t1 : timeline) {
    if (!world.inheres_at(x, whole, t1.index) || !world.member_at(part, whole, t1.index)) continue;
    auto t2 = std::find_if(timeline.begin() + static_cast<std::ptrdiff_t>(t1.index) + 1,
                           timeline.end(), [&](const TimePoint& tp) {
                             return !world.member_at(part, whole, tp.index);
                           });
    if (t2 == timeline.end()) continue;
    verdict.witnesses.push_back({t1, *t2, EntityId(whole), EntityId(part), EntityId(x),
                                 !world.inheres_at(x, whole, t2->index)});
  }

  if (verdict.witnesses.empty()) {
    verdict.status = MereologicalStatus::undetermined;
  } else if (std::any_of(verdict.witnesses.begin(), verdict.witnesses.end(),
                         [](const MereologicalEvidence& w) { return !w.realizable_lost; })) {
    verdict.status = MereologicalStatus::refuted;
  } else {
    verdict.status = MereologicalStatus::supported;
  }
  return verdict;
}

std::vector<GroundingCandidate> infer_grounding_candidates(const World& world,
                                                           std::string_view x) {
  if (!world.has_entity(x)) throw GroundingError("unknown entity '" + std::string(x) + "'");
  if (!world.instance_of(x, cls::realizable_entity)) {
    throw GroundingError("'" + std::string(x) + "' is not a realizable entity");
  }
  std::vector<GroundingCandidate> out;
  for (const auto& [id, e] : world.entities()) {
    if (id == x || !world.instance_of(id, cls::specifically_dependent_continuant)) continue;
    if (check_dependence_grounding(world, x, id).status == VerdictStatus::satisfied) {
      out.push_back({id, classify_grounding(world, x, id)});
    }
  }
  return out;
}

std::optional<EntityId> reduce_mereological_to_dependence(const World& world, std::string_view x,
                                                          std::string_view whole,
                                                          std::string_view part) {
  const auto verdict = check_mereological_grounding(world, x, whole, part);
  if (verdict.status != MereologicalStatus::supported) {
    throw GroundingError("reduction requires a supported mereological grounding, got " +
                         std::string(to_string(verdict.status)));
  }
  std::vector<TimeIndex> held;
  for (const auto& tp : world.timeline()) {
    if (world.inheres_at(x, whole, tp.index)) held.push_back(tp.index);
  }
  for (const auto& [id, e] : world.entities()) {
    if (id == x || !world.instance_of(id, cls::specifically_dependent_continuant)) continue;
    const bool always_with_x = std::all_of(held.begin(), held.end(), [&](TimeIndex t) {
      return world.inheres_at(id, whole, t);
    });
    const bool lost_at_separation =
        std::all_of(verdict.witnesses.begin(), verdict.witnesses.end(),
                    [&](const MereologicalEvidence& w) {
                      return !world.inheres_at(id, whole, w.t2.index);
                    });
    if (always_with_x && lost_at_separation) return id;
  }
  return std::nullopt;
}

}  // namespace groundwork
