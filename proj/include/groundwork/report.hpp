#pragma once

#include <string>

#include "groundwork/validator.hpp"
#include "groundwork/world.hpp"

namespace groundwork {

/// One line per diagnostic followed by a summary line with the counts and
/// the world digest.
std::string render_text(const ValidationReport& report);

/// One JSON object per diagnostic, keys in the order code, severity,
/// subjects, times, line. This is the golden-manifest format.
std::string render_json_lines(const ValidationReport& report);
std::string diagnostic_json(const Diagnostic& d);

/// `category bearer: id, id` lines, categories in declaration order.
std::string render_changes_text(const ChangeSet& changes);
std::string render_changes_json_lines(const ChangeSet& changes);

}  // namespace groundwork
