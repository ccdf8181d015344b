#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/world.hpp"

namespace groundwork {

enum class Severity { error, warning, info };
std::string_view to_string(Severity severity);

enum class RuleCode { R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, W1, W2 };

struct RuleInfo {
  RuleCode code;
  std::string_view id;    // "R2"
  std::string_view name;  // "DISP-MATERIAL-BEARER"
  Severity severity;      // default; R10 escalates to error when refuted
  std::string_view summary;
  std::string_view basis;
};

/// The fixed rule catalog in report order.
std::span<const RuleInfo> rule_catalog();
const RuleInfo& rule_info(RuleCode code);
std::optional<RuleCode> find_rule(std::string_view id);

struct Diagnostic {
  RuleCode code = RuleCode::R1;
  Severity severity = Severity::error;
  std::vector<EntityId> subjects;
  std::vector<TimePoint> times;
  std::string message;
  std::optional<int> source_line;

  bool operator==(const Diagnostic&) const = default;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;  // ordered by (time, code, subjects)
  std::size_t errors = 0;
  std::size_t warnings = 0;
  std::size_t infos = 0;
  std::string world_digest;  // SHA-256 of the canonical serialized world

  bool operator==(const ValidationReport&) const = default;
};

/// Runs every catalog rule over `world`.
ValidationReport validate(const World& world);

class UnknownRuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rule prose, its basis, and the report's diagnostics with that code.
std::string explain(const ValidationReport& report, std::string_view code);

/// `error R8 GR-COINHERE [x, y] @ t2 (line 7): message`
std::string format_diagnostic(const Diagnostic& d);

/// Hex SHA-256 of `text`.
std::string sha256_hex(std::string_view text);

}  // namespace groundwork
