#pragma once

// Command-line front end. Every subcommand writes one text report: a header
// echoing the run configuration, then one "## <check>" section per check.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fermat::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kUsage = 2,
  kBudget = 3,
  kInvariant = 4,
  kResource = 5,
};

struct RunConfig {
  std::string command;
  std::vector<std::uint64_t> primes{5};
  bool unchecked = false;

  // schedule
  std::size_t count = 2;
  // census, basis interdep
  std::size_t level = 0;
  std::size_t bound = 500;
  // build, scramble
  std::size_t dump = 8;
  // scramble, synthesize
  std::string spec = "identity";
  std::uint64_t seed = 0;
  // synthesize
  std::size_t levels = 1;
  std::size_t max_codes = 4096;
  std::uint64_t max_steps = 20'000'000;
  std::size_t samples = 1000;
  std::uint64_t sample_seed = 1;
  // basis
  std::string op;
  std::string element;
  std::vector<std::string> gens;
  std::string basis = "intrinsic";
  std::string strategy = "elimination";
  std::size_t max_terms = 200'000;
  std::size_t max_prefix = 4;
  std::size_t blind_degree = 6;

  std::string output;

  /// One "key: value" line per field, in declaration order.
  std::string serialize() const;
  /// Inverse of serialize(). ConfigError on unknown keys or bad values.
  static RunConfig parse(const std::string& text);
  /// ConfigError for combinations that cannot run.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Validates the config and builds its report. Throws the library's errors;
/// failed checks appear in the report as "check ...: FAIL".
std::string report(const RunConfig& config);

/// Parses arguments (without the program name) into a config. Throws Error
/// with reason "usage" on a grammar error and ConfigError on a bad config
/// file. "--config FILE" reads a serialized config.
RunConfig parse_args(const std::vector<std::string>& args);

/// Name of the environment variable holding the default report directory.
inline constexpr const char* kReportDirEnv = "FERMAT_REPORT_DIR";

/// Full command-line run. The report goes to --output, else to
/// $FERMAT_REPORT_DIR/<command>.txt, else to `out`. Failures print
/// "error: ..." and "reason: <tag>" lines to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermat::cli
