#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/world.hpp"

namespace groundwork {

class GroundingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VerdictStatus { satisfied, violated, undetermined };
std::string_view to_string(VerdictStatus status);

struct Evidence {
  TimePoint time;
  std::string condition;  // "c1" ground present, "c2" bearer compatible
  bool pass = false;

  bool operator==(const Evidence&) const = default;
};

/// violated iff some evidence fails; undetermined iff there is no evidence.
struct GroundingVerdict {
  VerdictStatus status = VerdictStatus::undetermined;
  std::vector<Evidence> evidence;
  std::string notes;

  /// Times at which a condition failed, in timeline order without repeats.
  std::vector<TimePoint> failing_times() const;
};

enum class MereologicalStatus { supported, refuted, undetermined };
std::string_view to_string(MereologicalStatus status);

/// One separation event: `part` is a member of `whole` at t1 and, for the
/// first time after t1, not at t2.
struct MereologicalEvidence {
  TimePoint t1;
  TimePoint t2;
  EntityId whole;
  EntityId part;
  EntityId realizable;
  bool realizable_lost = false;  // x no longer inheres in whole at t2

  bool operator==(const MereologicalEvidence&) const = default;
};

struct MereologicalVerdict {
  MereologicalStatus status = MereologicalStatus::undetermined;
  std::vector<MereologicalEvidence> witnesses;
};

enum class GroundingClass { internal, external };
std::string_view to_string(GroundingClass kind);

struct GroundingCandidate {
  EntityId ground;
  GroundingClass kind = GroundingClass::internal;

  bool operator==(const GroundingCandidate&) const = default;
};

/// Structural conditions for `x` being dependence grounded in `y`, checked at
/// every time x inheres in a bearer b:
///   c1  y, or an instance of a determinate class of y's class, inheres then;
///   c2  that ground inheres in b, or it is a relational quality whose bearer
///       is an aggregate having b as a member part at that time.
/// Whether the inherence holds *because* of the ground is not decidable from
/// assertions and is left to the author's `grounds` statement.
GroundingVerdict check_dependence_grounding(const World& world, std::string_view x,
                                            std::string_view y);

/// external iff y is a relational quality.
GroundingClass classify_grounding(const World& world, std::string_view x, std::string_view y);

/// Evidential reading over the actual timeline: supported when some
/// separation of `part` from `whole` is followed by x no longer inhering in
/// `whole`, refuted when x survives some separation, undetermined when the
/// timeline shows no separation while x inheres.
MereologicalVerdict check_mereological_grounding(const World& world, std::string_view x,
                                                 std::string_view whole, std::string_view part);

/// Every SDC y != x whose dependence check is satisfied, ordered by id.
std::vector<GroundingCandidate> infer_grounding_candidates(const World& world,
                                                           std::string_view x);

/// The first SDC (by id) that inheres in `whole` whenever x does and is gone
/// at every supporting separation time; the dependence ground that explains
/// the mereological one.
std::optional<EntityId> reduce_mereological_to_dependence(const World& world, std::string_view x,
                                                          std::string_view whole,
                                                          std::string_view part);

}  // namespace groundwork
