#pragma once

#include "kummer/kummer_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kummer::cli {

enum class Command { EllTable, Cohomology, VerifyProposition, CheckLedger, FullCert };
enum class Format { Text, Json };

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kBadInput = 2,
  kInternalError = 3,
};

std::string to_string(Command c);
std::optional<Command> parse_command(std::string_view name);
const std::vector<std::string>& command_names();

struct RunConfig {
  Command command = Command::FullCert;
  Format format = Format::Text;
  std::optional<std::string> script_path;
  std::optional<std::uint64_t> seed;
  model::CycleConvention convention = model::CycleConvention::Forward;
};

/// Throws InvalidArgument unless script_path is given exactly for check-ledger.
void validate(const RunConfig& config);

constexpr std::uint64_t kDefaultSeed = 20240611;

/// Runs one command. The report goes to out, diagnostics to err. Returns the
/// process exit status (ExitCode).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace kummer::cli
