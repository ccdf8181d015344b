#include "groundwork/corpus.hpp"

#include <json.hpp>

#include <algorithm>

#include "corpus_data.hpp"

namespace groundwork::corpus {

namespace {

std::string_view embedded(std::string_view name) {
  for (const auto& f : generated::kCorpusFiles) {
    if (f.name == name) return f.content;
  }
  throw UnknownCaseError("corpus file '" + std::string(name) + "' is not embedded");
}

GroundingClass parse_class(const std::string& s) {
  if (s == "internal") return GroundingClass::internal;
  if (s == "external") return GroundingClass::external;
  throw std::runtime_error("bad grounding class '" + s + "' in corpus inferences");
}

}  // namespace

const std::vector<std::string>& list_cases() {
  static const std::vector<std::string> ids{
      "case1_nacl",       "case1_nacl_mutant", "case2_university",
      "case3_commensal",  "hostpathogen_fig3", "hostpathogen_fig4",
  };
  return ids;
}

std::vector<ExpectedDiagnostic> parse_manifest(std::string_view json_lines) {
  std::vector<ExpectedDiagnostic> out;
  std::size_t start = 0;
  while (start < json_lines.size()) {
    auto nl = json_lines.find('\n', start);
    auto line = json_lines.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = nl == std::string_view::npos ? json_lines.size() : nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto j = nlohmann::json::parse(line);
    ExpectedDiagnostic d;
    d.code = j.at("code").get<std::string>();
    d.severity = j.at("severity").get<std::string>();
    d.subjects = j.at("subjects").get<std::vector<std::string>>();
    d.times = j.at("times").get<std::vector<std::string>>();
    if (!j.at("line").is_null()) d.line = j.at("line").get<int>();
    out.push_back(std::move(d));
  }
  return out;
}

CorpusCase load_case(std::string_view id) {
  const auto& ids = list_cases();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw UnknownCaseError("unknown corpus case '" + std::string(id) + "'");
  }
  const std::string base(id);
  CorpusCase c;
  c.id = base;
  c.document = std::string(embedded(base + ".bfo"));
  c.manifest = std::string(embedded(base + ".expected.json"));
  c.expected_report = parse_manifest(c.manifest);

  const auto inferences = nlohmann::json::parse(embedded(base + ".inferences.json"));
  for (const auto& [realizable, list] : inferences.items()) {
    auto& out = c.expected_inferences[realizable];
    for (const auto& entry : list) {
      out.push_back({entry.at("ground").get<std::string>(),
                     parse_class(entry.at("kind").get<std::string>())});
    }
  }
  return c;
}

}  // namespace groundwork::corpus
