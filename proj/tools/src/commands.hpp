#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sadovskii/lamb.hpp"
#include "sadovskii/solver.hpp"
#include "sadovskii/tail.hpp"
#include "settings.hpp"

namespace sadovskii::cli {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitFailed = 2 };

/// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutputDirEnv = "SADOVSKII_OUTPUT_DIR";

/// `[output] dir`, overridden by the environment variable; created if absent.
std::filesystem::path output_dir(const Settings& s);

/// Parses "96x48, 192x96". Throws ConfigError on malformed entries.
std::vector<std::pair<int, int>> parse_resolutions(const std::string& text);

SolveConfig solve_config(const Settings& s);
LambParams lamb_params(const Settings& s);
LambValidation oracle_config(const Settings& s);

/// Tail parameters; missing lengths default to fractions of the base contour
/// (tail length 2x the half-width, spike at 0.4x the top, epsilon 0.08x the
/// half-width, spike half-width 0.6 epsilon).
TailParams tail_params(const Settings& s, const ContourPolygon& base);

int command_solve(const Settings& s, std::ostream& out);
int command_oracle(const Settings& s, std::ostream& out);
int command_evolve(const Settings& s, std::ostream& out);
int command_verify(const Settings& s, const std::string& report_path, std::ostream& out);

/// Parses arguments, loads and overrides the configuration and dispatches.
/// Errors are printed to `err` and mapped to kExitError.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sadovskii::cli
