#pragma once

// Command-line configuration and dispatch for the circleforge tool. The
// parser and the runner are separate so tests can drive run() in-process.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "circleforge/arith.hpp"

namespace circleforge::cli {

struct CommandConfig {
  std::string subcommand;
  std::optional<u64> limit;      // X
  std::optional<u64> trunc;      // W
  std::string psi = "log";
  std::optional<i64> n;
  std::optional<int> k;
  std::optional<u64> q;
  std::optional<u64> a;
  std::optional<u64> P;
  std::optional<double> Q;
  std::optional<u64> sample;
  u64 seed = 0;
  std::string format = "json";   // json | csv
  std::string cache_dir;
  std::string out;
  std::string kind;              // moments: I1 | I2 | HUA8 | cubes | L52
};

enum ExitCode : int { kSuccess = 0, kFailure = 1, kPrecondition = 2, kBudget = 3 };

/// Parses argv (without applying the environment). Returns nothing after
/// printing help to `help`; other usage errors throw CLI::ParseError.
std::optional<CommandConfig> parse_arguments(int argc, const char* const* argv, std::ostream& help);

/// One-line error object in the given format.
void write_error(std::ostream& err, const std::string& format, const std::string& kind,
                 const std::string& message);

/// CIRCLEFORGE_CACHE, when set, replaces cache_dir.
void apply_environment(CommandConfig& config);

/// Runs the command, writing the report to `out`, or a one-line error
/// object to `err` on failure. Returns the exit status.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// `count` distinct integers from [lo, hi], ascending. Floyd's algorithm
/// driven by std::mt19937_64(seed); a draw in [0, m) is rng() % m.
std::vector<i64> sample_integers(i64 lo, i64 hi, u64 count, u64 seed);

/// Rounds to 12 significant digits (the printed precision).
double round12(double x);

}  // namespace circleforge::cli
