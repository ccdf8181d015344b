#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/grounding.hpp"

namespace groundwork::corpus {

/// The parts of a diagnostic a golden manifest pins down.
struct ExpectedDiagnostic {
  std::string code;
  std::string severity;
  std::vector<std::string> subjects;
  std::vector<std::string> times;
  std::optional<int> line;

  bool operator==(const ExpectedDiagnostic&) const = default;
};

struct CorpusCase {
  std::string id;
  std::string document;  // .bfo source
  std::string manifest;  // raw JSON-lines of the expected report
  std::vector<ExpectedDiagnostic> expected_report;
  std::map<std::string, std::vector<GroundingCandidate>> expected_inferences;
};

class UnknownCaseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// case1_nacl, case1_nacl_mutant, case2_university, case3_commensal,
/// hostpathogen_fig3, hostpathogen_fig4.
const std::vector<std::string>& list_cases();

CorpusCase load_case(std::string_view id);

/// Parses a JSON-lines report (the CLI's structured validate output).
std::vector<ExpectedDiagnostic> parse_manifest(std::string_view json_lines);

}  // namespace groundwork::corpus
