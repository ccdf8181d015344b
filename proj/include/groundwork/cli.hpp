#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace groundwork::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationErrors = 1,
  kInputFailure = 2,  // parse or elaboration failure, unreadable file
  kUsage = 3,
};

enum class Command { validate, infer, diff, explain, fmt };
enum class Format { text, json_lines };

struct CliConfig {
  Command command = Command::validate;
  std::string input_path;  // used for diagnostics only; may be empty for explain
  Format format = Format::text;
  std::string entity;      // infer --entity
  std::string from;        // diff --from
  std::string to;          // diff --to
  std::string code;        // explain --code
};

struct CliOutput {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Executes one command over already-read file contents. `contents` is
/// ignored only for `explain` without an input path.
CliOutput run(const CliConfig& config, std::optional<std::string_view> contents);

/// Argument parsing, file reading and dispatch. Returns the exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace groundwork::cli
