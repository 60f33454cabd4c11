#ifndef NCV_CLI_HPP
#define NCV_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ncv/core.hpp"

namespace ncv::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kIdentityBreach = 1,
  kParseError = 2,
  kDimensionError = 3,
  kSingular = 4,
  kInconsistent = 5,
  kNotHermitian = 6,
};

int exit_code_for(ErrorCode code);

struct RunConfig {
  std::optional<int> dim;
  std::optional<double> hbar;
  std::optional<Chart> chart;
  std::uint64_t seed = 42;
  int trials = 200;
  double tolerance = 1e-10;
  int max_dim = 64;
  std::string output_path;

  double hbar_or_default() const { return hbar.value_or(1.0); }

  /// Throws Error(InvalidArgument) when a field is out of range.
  void validate() const;
};

/// Entry point behind the `ncv` binary; returns the process exit code.
/// Results go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncv::cli

#endif  // NCV_CLI_HPP
