#include "groundwork/validator.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "groundwork/dsl.hpp"
#include "groundwork/grounding.hpp"

namespace groundwork {

namespace {

constexpr std::array<RuleInfo, 13> kCatalog{{
    {RuleCode::R1, "R1", "TYPE-DISJOINT", Severity::error,
     "An entity instantiates a class whose ancestry contains two classes declared disjoint, "
     "so the entity would have to be both (for example both a disposition and a role).",
     "Disposition and role are disjoint siblings under realizable entity; disjoint classes "
     "share no instances."},
    {RuleCode::R2, "R2", "DISP-MATERIAL-BEARER", Severity::error,
     "A disposition inheres in a bearer that is not a material entity.",
     "Disposition definition, clause (ii): the bearer of a disposition is some material "
     "entity."},
    {RuleCode::R3, "R3", "DISP-IMMATERIAL", Severity::error,
     "A disposition inheres in an immaterial entity such as a site or boundary. Roles may "
     "be borne by immaterial entities; dispositions may not.",
     "Immaterial entities have no physical basis, so they cannot bear dispositions."},
    {RuleCode::R4, "R4", "DISP-LOSS-NO-CHANGE", Severity::error,
     "A disposition ceases to inhere in its bearer between adjacent time points while the "
     "bearer gains or loses no quality and no member part.",
     "Disposition definition, clause (iii): if a disposition ceases to exist, its bearer is "
     "physically changed."},
    {RuleCode::R5, "R5", "ROLE-LOSS-INFO", Severity::info,
     "A role ceases without any physical change to its bearer. This is permitted and is "
     "reported for information.",
     "Role definition, clause (iii): losing a role does not change the physical make-up of "
     "its bearer."},
    {RuleCode::R6, "R6", "GR-DISP-RELATIONAL", Severity::error,
     "An internal grounding, or any grounding of a disposition, names a relational quality "
     "as its ground.",
     "Internal grounding: the ground is a quality that is not a relational quality."},
    {RuleCode::R7, "R7", "GR-ROLE-NONRELATIONAL", Severity::error,
     "A role is grounded in something other than a relational quality.",
     "External grounding: roles are grounded in relational qualities."},
    {RuleCode::R8, "R8", "GR-COINHERE", Severity::error,
     "An asserted grounding fails its structural check: at some time the realizable "
     "inheres while neither the ground nor a determinate of it inheres in a compatible "
     "bearer.",
     "Dependence grounding: x inheres in b at t because determinates of the ground inhere "
     "in b at t."},
    {RuleCode::R9, "R9", "DETERMINATE-DETERMINABLE", Severity::error,
     "Instances of two sibling determinate classes of one determinable inhere in the same "
     "bearer at the same time.",
     "A bearer has one determinate of a determinable at a time (one colour, one degree of "
     "solubility)."},
    {RuleCode::R10, "R10", "MEREO-UNSUPPORTED", Severity::warning,
     "A mereological grounding is refuted by the timeline (error: the realizable survives "
     "the loss of the part) or has no separation event to support it (warning).",
     "Mereological grounding: were the whole to become disjoint from the part, the "
     "realizable would no longer inhere in the whole."},
    {RuleCode::R11, "R11", "REALIZATION-PARTICIPATION", Severity::error,
     "A process realizes a realizable entity whose bearer never participates in that "
     "process while the realizable inheres.",
     "A realizable entity is realized in processes in which its bearer participates."},
    {RuleCode::W1, "W1", "DISP-UNGROUNDED", Severity::warning,
     "A disposition has no asserted grounding and no quality or other dependent continuant "
     "that could structurally ground it.",
     "A bearer that has dispositions has qualities on which they depend; an ungrounded "
     "disposition usually means a missing quality."},
    {RuleCode::W2, "W2", "ROLE-PERSISTS-GROUND-LOST", Severity::warning,
     "A role still inheres after the relational quality it is grounded in has ceased.",
     "When the relation underwriting a role is eliminated, the role is expected to go with "
     "it."},
}};

std::optional<int> inherence_line(const World& world, std::string_view sdc,
                                  std::string_view bearer, TimeIndex t) {
  for (const auto& a : world.assertions()) {
    if (a.kind == RelationKind::inheres_in && a.time == t && a.subject == sdc &&
        a.object == bearer) {
      return a.source_line;
    }
  }
  return std::nullopt;
}

std::string join_ids(const std::vector<EntityId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  return out;
}

std::string join_times(const std::vector<TimePoint>& times) {
  std::string out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i) out += ", ";
    out += times[i].label;
  }
  return out;
}

class RuleRunner {
 public:
  explicit RuleRunner(const World& world) : w_(world) {
    for (const auto& tp : w_.timeline()) snapshots_.push_back(snapshot(w_, tp.index));
  }

  std::vector<Diagnostic> run() {
    type_disjoint();
    disposition_bearers();
    cessation();
    grounding_kinds();
    coinherence();
    determinates();
    mereological();
    realization();
    ungrounded_dispositions();
    role_persistence();
    return std::move(out_);
  }

 private:
  void emit(RuleCode code, std::vector<EntityId> subjects, std::vector<TimePoint> times,
            std::string message, std::optional<int> line,
            std::optional<Severity> severity = std::nullopt) {
    out_.push_back(Diagnostic{code, severity.value_or(rule_info(code).severity),
                              std::move(subjects), std::move(times), std::move(message), line});
  }

  bool is_a(std::string_view id, std::string_view c) const { return w_.instance_of(id, c); }

  void type_disjoint() {
    for (const auto& [id, e] : w_.entities()) {
      if (auto pair = w_.taxonomy().conflicting_ancestors(e.class_name)) {
        emit(RuleCode::R1, {id}, {},
             "'" + id + "' is a '" + e.class_name + "', which falls under both '" + pair->first +
                 "' and '" + pair->second + "', declared disjoint",
             e.source_line);
      }
    }
  }

  void disposition_bearers() {
    for (const auto& [id, e] : w_.entities()) {
      if (!is_a(id, cls::disposition)) continue;
      std::map<EntityId, std::vector<TimePoint>> by_bearer;
      for (const auto& tp : w_.timeline()) {
        if (auto b = w_.bearer_at(id, tp.index)) by_bearer[*b].push_back(tp);
      }
      for (auto& [bearer, times] : by_bearer) {
        if (is_a(bearer, cls::material_entity)) continue;
        const auto line = inherence_line(w_, id, bearer, times.front().index);
        if (is_a(bearer, cls::immaterial_entity)) {
          emit(RuleCode::R3, {id, bearer}, times,
               "disposition '" + id + "' inheres in immaterial entity '" + bearer + "' (" +
                   w_.class_of(bearer) + ")",
               line);
        } else {
          emit(RuleCode::R2, {id, bearer}, times,
               "disposition '" + id + "' inheres in '" + bearer + "' (" + w_.class_of(bearer) +
                   "), which is not a material entity",
               line);
        }
      }
    }
  }

  void cessation() {
    const auto& tl = w_.timeline();
    for (std::size_t i = 0; i + 1 < tl.size(); ++i) {
      const auto changes = diff_states(snapshots_[i], snapshots_[i + 1]);
      for (const auto& [x, bearer] : w_.inherence_at(i)) {
        if (!is_a(x, cls::realizable_entity) || w_.inheres_at(x, bearer, i + 1)) continue;
        if (changes.physically_changed(bearer)) continue;
        const auto line = inherence_line(w_, x, bearer, i);
        if (is_a(x, cls::disposition)) {
          emit(RuleCode::R4, {x, bearer}, {tl[i], tl[i + 1]},
               "disposition '" + x + "' ceases in '" + bearer + "' between " + tl[i].label +
                   " and " + tl[i + 1].label + " but the bearer gains or loses no quality or part",
               line);
        } else if (is_a(x, cls::role)) {
          emit(RuleCode::R5, {x, bearer}, {tl[i], tl[i + 1]},
               "role '" + x + "' ceases in '" + bearer + "' between " + tl[i].label + " and " +
                   tl[i + 1].label + " without physical change to the bearer",
               line);
        }
      }
    }
  }

  void grounding_kinds() {
    for (const auto& g : w_.groundings()) {
      const bool relational = is_a(g.ground, cls::relational_quality);
      if (relational && (g.kind == GroundingKind::internal || is_a(g.realizable, cls::disposition))) {
        emit(RuleCode::R6, {g.realizable, g.ground}, {},
             "'" + g.realizable + "' is grounded (" + std::string(to_string(g.kind)) +
                 ") in relational quality '" + g.ground + "'",
             g.source_line);
      }
      if (is_a(g.realizable, cls::role) && !relational) {
        emit(RuleCode::R7, {g.realizable, g.ground}, {},
             "role '" + g.realizable + "' is grounded in '" + g.ground + "' (" +
                 w_.class_of(g.ground) + "), which is not a relational quality",
             g.source_line);
      }
    }
  }

  void coinherence() {
    for (const auto& g : w_.groundings()) {
      const auto verdict = check_dependence_grounding(w_, g.realizable, g.ground);
      if (verdict.status != VerdictStatus::violated) continue;
      auto times = verdict.failing_times();
      emit(RuleCode::R8, {g.realizable, g.ground}, times,
           "'" + g.realizable + "' inheres at " + join_times(times) + " without its ground '" +
               g.ground + "' (or a determinate of it) in a compatible bearer",
           g.source_line);
    }
  }

  void determinates() {
    const auto& tax = w_.taxonomy();
    std::set<ClassName> determinables;
    for (const auto& l : tax.determinations()) determinables.insert(l.determinable_class);

    for (const auto& tp : w_.timeline()) {
      std::map<EntityId, std::vector<EntityId>> by_bearer;
      for (const auto& [sdc, bearer] : w_.inherence_at(tp.index)) by_bearer[bearer].push_back(sdc);

      for (const auto& [bearer, sdcs] : by_bearer) {
        for (const auto& determinable : determinables) {
          const auto siblings = tax.direct_determinates_of(determinable);
          std::set<ClassName> hit;
          std::vector<EntityId> involved;
          for (const auto& sdc : sdcs) {
            for (const auto& d : siblings) {
              if (tax.is_subclass_of(w_.class_of(sdc), d)) {
                hit.insert(d);
                involved.push_back(sdc);
                break;
              }
            }
          }
          if (hit.size() < 2) continue;
          std::sort(involved.begin(), involved.end());
          std::vector<EntityId> subjects{bearer};
          subjects.insert(subjects.end(), involved.begin(), involved.end());
          emit(RuleCode::R9, subjects, {tp},
               "'" + bearer + "' bears several determinates of '" + determinable + "' at " +
                   tp.label + ": " + join_ids(involved),
               inherence_line(w_, involved.front(), bearer, tp.index));
        }
      }
    }
  }

  void mereological() {
    for (const auto& m : w_.mereological_groundings()) {
      const auto verdict = check_mereological_grounding(w_, m.realizable, m.whole, m.part);
      if (verdict.status == MereologicalStatus::supported) continue;
      if (verdict.status == MereologicalStatus::refuted) {
        std::vector<TimePoint> times;
        for (const auto& wit : verdict.witnesses) {
          if (wit.realizable_lost) continue;
          times.push_back(wit.t1);
          times.push_back(wit.t2);
        }
        std::sort(times.begin(), times.end(),
                  [](const TimePoint& a, const TimePoint& b) { return a.index < b.index; });
        times.erase(std::unique(times.begin(), times.end()), times.end());
        emit(RuleCode::R10, {m.realizable, m.whole, m.part}, times,
             "'" + m.realizable + "' still inheres in '" + m.whole + "' after '" + m.part +
                 "' stops being a member part",
             m.source_line, Severity::error);
      } else {
        emit(RuleCode::R10, {m.realizable, m.whole, m.part}, {},
             "no time point separates '" + m.part + "' from '" + m.whole + "' while '" +
                 m.realizable + "' inheres in it",
             m.source_line, Severity::warning);
      }
    }
  }

  void realization() {
    for (const auto& a : w_.assertions()) {
      if (a.kind != RelationKind::realizes) continue;
      const auto& process = a.subject;
      const auto& x = a.object;
      std::vector<TimePoint> held;
      bool participates = false;
      for (const auto& tp : w_.timeline()) {
        auto b = w_.bearer_at(x, tp.index);
        if (!b) continue;
        held.push_back(tp);
        if (w_.participates_at(*b, process, tp.index)) participates = true;
      }
      if (participates) continue;
      emit(RuleCode::R11, {process, x}, held,
           held.empty() ? "'" + x + "' is realized by '" + process + "' but never inheres"
                        : "the bearer of '" + x + "' never participates in '" + process +
                              "' while '" + x + "' inheres",
           a.source_line);
    }
  }

  void ungrounded_dispositions() {
    std::set<EntityId> asserted;
    for (const auto& g : w_.groundings()) asserted.insert(g.realizable);
    for (const auto& [id, e] : w_.entities()) {
      if (!is_a(id, cls::disposition) || asserted.contains(id)) continue;
      if (!infer_grounding_candidates(w_, id).empty()) continue;
      emit(RuleCode::W1, {id}, {},
           "disposition '" + id + "' has no asserted grounding and no structural candidate",
           e.source_line);
    }
  }

  void role_persistence() {
    for (const auto& g : w_.groundings()) {
      if (!is_a(g.realizable, cls::role) || !is_a(g.ground, cls::relational_quality)) continue;
      std::vector<TimePoint> times;
      bool ground_seen = false;
      for (const auto& tp : w_.timeline()) {
        const bool ground_here = w_.bearer_at(g.ground, tp.index).has_value();
        if (ground_here) {
          ground_seen = true;
        } else if (ground_seen && w_.bearer_at(g.realizable, tp.index)) {
          times.push_back(tp);
        }
      }
      if (times.empty()) continue;
      emit(RuleCode::W2, {g.realizable, g.ground}, times,
           "role '" + g.realizable + "' persists at " + join_times(times) +
               " after its relational ground '" + g.ground + "' ceased",
           g.source_line);
    }
  }

  const World& w_;
  std::vector<Snapshot> snapshots_;
  std::vector<Diagnostic> out_;
};

std::size_t code_rank(RuleCode c) { return static_cast<std::size_t>(c); }

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
  // Atemporal diagnostics sort before every time point.
  auto first_time = [](const Diagnostic& d) -> std::ptrdiff_t {
    return d.times.empty() ? -1 : static_cast<std::ptrdiff_t>(d.times.front().index);
  };
  auto time_indices = [](const Diagnostic& d) {
    std::vector<TimeIndex> v;
    for (const auto& t : d.times) v.push_back(t.index);
    return v;
  };
  const auto ta = first_time(a), tb = first_time(b);
  if (ta != tb) return ta < tb;
  if (a.code != b.code) return code_rank(a.code) < code_rank(b.code);
  if (a.subjects != b.subjects) return a.subjects < b.subjects;
  const auto ia = time_indices(a), ib = time_indices(b);
  if (ia != ib) return ia < ib;
  if (a.severity != b.severity) return a.severity < b.severity;
  if (a.source_line != b.source_line) return a.source_line < b.source_line;
  return a.message < b.message;
}

}  // namespace

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "?";
}

std::span<const RuleInfo> rule_catalog() { return kCatalog; }

const RuleInfo& rule_info(RuleCode code) { return kCatalog[code_rank(code)]; }

std::optional<RuleCode> find_rule(std::string_view id) {
  for (const auto& r : kCatalog) {
    if (r.id == id || r.name == id) return r.code;
  }
  return std::nullopt;
}

std::string sha256_hex(std::string_view text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

ValidationReport validate(const World& world) {
  ValidationReport report;
  report.diagnostics = RuleRunner(world).run();
  std::sort(report.diagnostics.begin(), report.diagnostics.end(), diagnostic_less);
  for (const auto& d : report.diagnostics) {
    switch (d.severity) {
      case Severity::error: ++report.errors; break;
      case Severity::warning: ++report.warnings; break;
      case Severity::info: ++report.infos; break;
    }
  }
  report.world_digest = sha256_hex(dsl::serialize(dsl::to_document(world)));
  return report;
}

std::string format_diagnostic(const Diagnostic& d) {
  const auto& info = rule_info(d.code);
  std::ostringstream os;
  os << to_string(d.severity) << ' ' << info.id << ' ' << info.name << " [" << join_ids(d.subjects)
     << ']';
  if (!d.times.empty()) os << " @ " << join_times(d.times);
  if (d.source_line) os << " (line " << *d.source_line << ')';
  os << ": " << d.message;
  return os.str();
}

std::string explain(const ValidationReport& report, std::string_view code) {
  const auto rc = find_rule(code);
  if (!rc) throw UnknownRuleError("unknown rule code '" + std::string(code) + "'");
  const auto& info = rule_info(*rc);
  std::ostringstream os;
  os << info.id << ' ' << info.name << " (" << to_string(info.severity) << ")\n";
  os << info.summary << '\n';
  os << "Basis: " << info.basis << '\n';
  std::vector<const Diagnostic*> matching;
  for (const auto& d : report.diagnostics) {
    if (d.code == *rc) matching.push_back(&d);
  }
  os << "Diagnostics: " << matching.size() << '\n';
  for (const auto* d : matching) os << "  " << format_diagnostic(*d) << '\n';
  return os.str();
}

}  // namespace groundwork
