#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace mapseg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kIoError = 2,
  kNotConverged = 3,
};

struct CliOptions {
  std::filesystem::path input;
  std::filesystem::path mask;
  std::optional<std::filesystem::path> overlay;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> dump_eigenvector;
  double lambda = 5.0;
  std::size_t colors = 16;
  int neighborhood = 4;
  std::size_t max_iters = 300;
  double tol = 1e-6;
  std::uint64_t seed = 42;
};

/// Parses arguments, segments the input and writes the requested files.
/// Returns one of ExitCode. Outputs are still written when the solver does
/// not converge.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mapseg::cli
