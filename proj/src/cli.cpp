#include "groundwork/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "groundwork/dsl.hpp"
#include "groundwork/grounding.hpp"
#include "groundwork/report.hpp"
#include "groundwork/validator.hpp"

namespace groundwork::cli {

namespace {

struct Loaded {
  std::optional<World> world;
  std::optional<dsl::Document> document;
};

std::string display_path(const CliConfig& c) {
  return c.input_path.empty() ? std::string("<input>") : c.input_path;
}

/// Parses (and optionally elaborates) the input; failures go to `result.err`.
Loaded load(const CliConfig& config, std::string_view contents, bool need_world,
            CliOutput& result) {
  Loaded loaded;
  const auto path = display_path(config);
  auto parsed = dsl::parse(contents);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) {
      result.err += path + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) +
                    ": error: " + e.message + " (expected " + e.expected + ")\n";
    }
    result.exit_code = kInputFailure;
    return loaded;
  }
  if (!need_world) {
    loaded.document = std::move(parsed.document);
    return loaded;
  }
  auto elaborated = dsl::elaborate(parsed.document);
  if (!elaborated.ok()) {
    for (const auto& e : elaborated.errors) {
      result.err += path + ":" + std::to_string(e.line) + ": error: " + e.message + "\n";
    }
    result.exit_code = kInputFailure;
    return loaded;
  }
  loaded.document = std::move(parsed.document);
  loaded.world = std::move(elaborated.world);
  return loaded;
}

CliOutput usage_error(const std::string& message) {
  return CliOutput{kUsage, "", "error: " + message + "\n"};
}

CliOutput run_validate(const CliConfig& config, const World& world) {
  const auto report = validate(world);
  CliOutput result;
  result.out = config.format == Format::json_lines ? render_json_lines(report)
                                                   : render_text(report);
  result.exit_code = report.errors > 0 ? kValidationErrors : kOk;
  return result;
}

CliOutput run_infer(const CliConfig& config, const World& world) {
  if (config.entity.empty()) return usage_error("infer requires --entity");
  if (!world.has_entity(config.entity)) {
    return usage_error("unknown entity '" + config.entity + "'");
  }
  std::vector<GroundingCandidate> candidates;
  try {
    candidates = infer_grounding_candidates(world, config.entity);
  } catch (const GroundingError& e) {
    return usage_error(e.what());
  }
  CliOutput result;
  for (const auto& c : candidates) {
    if (config.format == Format::json_lines) {
      nlohmann::ordered_json j;
      j["realizable"] = config.entity;
      j["ground"] = c.ground;
      j["kind"] = std::string(to_string(c.kind));
      result.out += j.dump() + "\n";
    } else {
      result.out += c.ground + " " + std::string(to_string(c.kind)) + "\n";
    }
  }
  return result;
}

CliOutput run_diff(const CliConfig& config, const World& world) {
  if (config.from.empty() || config.to.empty()) {
    return usage_error("diff requires --from and --to");
  }
  const auto from = world.find_time(config.from);
  const auto to = world.find_time(config.to);
  if (!from) return usage_error("unknown time point '" + config.from + "'");
  if (!to) return usage_error("unknown time point '" + config.to + "'");
  ChangeSet changes;
  try {
    changes = diff_snapshots(snapshot(world, *from), snapshot(world, *to));
  } catch (const ModelError& e) {
    return usage_error(e.what());
  }
  CliOutput result;
  result.out = config.format == Format::json_lines ? render_changes_json_lines(changes)
                                                   : render_changes_text(changes);
  return result;
}

}  // namespace

CliOutput run(const CliConfig& config, std::optional<std::string_view> contents) {
  if (config.command == Command::explain) {
    if (config.code.empty()) return usage_error("explain requires --code");
    if (!find_rule(config.code)) return usage_error("unknown rule code '" + config.code + "'");
    ValidationReport report;
    if (contents) {
      CliOutput failure;
      auto loaded = load(config, *contents, true, failure);
      if (!loaded.world) return failure;
      report = validate(*loaded.world);
    }
    return CliOutput{kOk, explain(report, config.code), ""};
  }

  if (!contents) return usage_error("an input file is required");
  CliOutput failure;
  const bool need_world = config.command != Command::fmt;
  auto loaded = load(config, *contents, need_world, failure);
  if (failure.exit_code != kOk) return failure;

  switch (config.command) {
    case Command::fmt: return CliOutput{kOk, dsl::serialize(*loaded.document), ""};
    case Command::validate: return run_validate(config, *loaded.world);
    case Command::infer: return run_infer(config, *loaded.world);
    case Command::diff: return run_diff(config, *loaded.world);
    case Command::explain: break;
  }
  return usage_error("unsupported command");
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Validate and query grounding relations in .bfo ontology worlds", "groundwork"};
  app.require_subcommand(1);

  CliConfig config;
  std::string format = "text";
  const std::map<std::string, Format> formats{{"text", Format::text},
                                              {"json-lines", Format::json_lines}};

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json-lines"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Run the rule catalog over a world");
  validate_cmd->add_option("file", config.input_path, ".bfo document")->required();
  add_format(validate_cmd);

  auto* infer_cmd = app.add_subcommand("infer", "List grounding candidates for a realizable");
  infer_cmd->add_option("file", config.input_path, ".bfo document")->required();
  infer_cmd->add_option("--entity", config.entity, "Realizable entity id")->required();
  add_format(infer_cmd);

  auto* diff_cmd = app.add_subcommand("diff", "Changes between two time points");
  diff_cmd->add_option("file", config.input_path, ".bfo document")->required();
  diff_cmd->add_option("--from", config.from, "Earlier time point")->required();
  diff_cmd->add_option("--to", config.to, "Later time point")->required();
  add_format(diff_cmd);

  auto* explain_cmd = app.add_subcommand("explain", "Describe a rule and its diagnostics");
  explain_cmd->add_option("file", config.input_path, ".bfo document (optional)");
  explain_cmd->add_option("--code", config.code, "Rule code, e.g. R2")->required();
  add_format(explain_cmd);

  auto* fmt_cmd = app.add_subcommand("fmt", "Print the canonical form of a document");
  fmt_cmd->add_option("file", config.input_path, ".bfo document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  if (validate_cmd->parsed()) config.command = Command::validate;
  if (infer_cmd->parsed()) config.command = Command::infer;
  if (diff_cmd->parsed()) config.command = Command::diff;
  if (explain_cmd->parsed()) config.command = Command::explain;
  if (fmt_cmd->parsed()) config.command = Command::fmt;
  config.format = formats.at(format);

  std::optional<std::string> contents;
  if (!config.input_path.empty()) {
    std::ifstream in(config.input_path, std::ios::binary);
    if (!in) {
      err << "error: cannot read '" << config.input_path << "'\n";
      return kInputFailure;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    contents = buf.str();
  }

  const auto result = run(config, contents ? std::optional<std::string_view>(*contents)
                                           : std::nullopt);
  out << result.out;
  err << result.err;
  return result.exit_code;
}

}  // namespace groundwork::cli
