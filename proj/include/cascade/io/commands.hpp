#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/io/documents.hpp"

namespace lqss::io {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitNegative = 2,
  kExitPrecondition = 3,
  kExitNumeric = 4,
};

/// What a subcommand prints (exactly one JSON value) and its exit status.
struct CommandResult {
  int exit_code = kExitOk;
  json output;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kDefaultEquivalenceTolerance = 1e-8;
inline constexpr std::size_t kDefaultSamples = 20;

/// Default tolerance, overridden by the CASCADE_SYNTH_TOL environment variable.
double default_tolerance(double fallback = kDefaultTolerance);

/// Parses "re+imj" style complex literals: "1", "-2.5", "3j", "1-2j", "1e-3+4e2j".
Complex parse_complex(std::string_view text);
/// Comma-separated list of complex literals.
std::vector<Complex> parse_points(std::string_view text);

CommandResult cmd_check(const std::filesystem::path& path, double tol);

CommandResult cmd_decompose(const std::filesystem::path& path,
                            const std::optional<std::filesystem::path>& out, double tol);

struct PassiveRealizeOptions {
  double triangular_tol = kDefaultTolerance;
  double equivalence_tol = kDefaultEquivalenceTolerance;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
};

CommandResult cmd_passive_realize(const std::filesystem::path& path,
                                  const std::optional<std::filesystem::path>& out,
                                  const PassiveRealizeOptions& opts);

/// Samples the doubled-up transfer function; output is a JSON array.
CommandResult cmd_tf(const std::filesystem::path& path, const std::vector<Complex>& points);

CommandResult cmd_verify(const std::filesystem::path& a, const std::filesystem::path& b,
                         std::size_t samples, double tol, std::uint64_t seed);

/// Re-cascades a realization document into a general system document.
CommandResult cmd_cascade(const std::filesystem::path& path,
                          const std::optional<std::filesystem::path>& out);

/// Maps library errors onto exit codes and a JSON error object.
CommandResult error_result(const Error& e);

}  // namespace lqss::io
