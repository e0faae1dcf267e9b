#pragma once

#include "config.hpp"

#include <filesystem>
#include <iosfwd>

namespace pprc::cli {

struct CommandContext {
  std::filesystem::path out_dir = ".";
  int threads = 1;
  std::ostream *out = nullptr; ///< summary
  std::ostream *err = nullptr; ///< diagnostics
};

/// Exit codes shared by all commands.
enum ExitCode : int {
  kOk = 0,
  kInconsistent = 1,
  kNoKernels = 2,
  kConfigError = 3,
  kRuntimeError = 4,
};

int cmd_project(const ExperimentConfig &cfg, const CommandContext &ctx);
/// 0 consistent within tolerance, 1 inconsistent, 2 no kernels exist.
int cmd_check(const ExperimentConfig &cfg, const CommandContext &ctx);
int cmd_separability(const ExperimentConfig &cfg, const CommandContext &ctx);
int cmd_solve(const ExperimentConfig &cfg, const CommandContext &ctx);
/// 0 if every invariant check passes, 1 otherwise.
int cmd_verify(const ExperimentConfig &cfg, const CommandContext &ctx);

} // namespace pprc::cli
