#include "groundwork/report.hpp"

#include <json.hpp>

#include <sstream>
#include <utility>

namespace groundwork {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename Fn>
void for_each_category(const ChangeSet& c, Fn&& fn) {
  const std::pair<std::string_view, const IdSetMap*> categories[] = {
      {"lost_qualities", &c.lost_qualities},         {"gained_qualities", &c.gained_qualities},
      {"lost_parts", &c.lost_parts},                 {"gained_parts", &c.gained_parts},
      {"lost_realizables", &c.lost_realizables},     {"gained_realizables", &c.gained_realizables},
  };
  for (const auto& [name, map] : categories) {
    for (const auto& [bearer, ids] : *map) fn(name, bearer, ids);
  }
}

}  // namespace

std::string diagnostic_json(const Diagnostic& d) {
  ordered_json j;
  j["code"] = std::string(rule_info(d.code).id);
  j["severity"] = std::string(to_string(d.severity));
  j["subjects"] = d.subjects;
  auto times = ordered_json::array();
  for (const auto& t : d.times) times.push_back(t.label);
  j["times"] = std::move(times);
  j["line"] = d.source_line ? ordered_json(*d.source_line) : ordered_json(nullptr);
  return j.dump();
}

std::string render_json_lines(const ValidationReport& report) {
  std::string out;
  for (const auto& d : report.diagnostics) {
    out += diagnostic_json(d);
    out += '\n';
  }
  return out;
}

std::string render_text(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& d : report.diagnostics) os << format_diagnostic(d) << '\n';
  os << report.errors << " error(s), " << report.warnings << " warning(s), " << report.infos
     << " info(s); world sha256:" << report.world_digest << '\n';
  return os.str();
}

std::string render_changes_text(const ChangeSet& changes) {
  std::ostringstream os;
  for_each_category(changes, [&](std::string_view name, const EntityId& bearer,
                                 const std::set<EntityId>& ids) {
    os << name << ' ' << bearer << ':';
    bool first = true;
    for (const auto& id : ids) {
      os << (first ? " " : ", ") << id;
      first = false;
    }
    os << '\n';
  });
  return os.str();
}

std::string render_changes_json_lines(const ChangeSet& changes) {
  std::string out;
  for_each_category(changes, [&](std::string_view name, const EntityId& bearer,
                                 const std::set<EntityId>& ids) {
    ordered_json j;
    j["category"] = std::string(name);
    j["bearer"] = bearer;
    j["ids"] = ids;
    j["from"] = changes.from.label;
    j["to"] = changes.to.label;
    out += j.dump();
    out += '\n';
  });
  return out;
}

}  // namespace groundwork
