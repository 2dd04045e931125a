#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tetris/clearing.hpp"

namespace tetris {

enum class Mode { kAnalyze, kClear, kClearExtended, kValidate };

/// Batch exit codes.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitValidationFailure = 1,
  kExitInfeasible = 2,
  kExitInvariantViolation = 3,
};

/// One invocation of the batch driver.
struct RunConfig {
  Mode mode = Mode::kClear;
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> output_dir;
  bool emit_graph = false;
  bool split_components = true;
  AllocationOrder allocation = AllocationOrder::kById;
};

/// Runs one mode, printing results to `out` and diagnostics to `err`.
/// Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace tetris
