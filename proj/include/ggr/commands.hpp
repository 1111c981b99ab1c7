#pragma once

// The ggr subcommands. Each builds a ReportEnvelope; run_job maps the outcome
// to an exit code.

#include <string>

#include "ggr/report.hpp"

namespace ggr {

enum ExitCode : int { kExitPass = 0, kExitMismatch = 1, kExitCap = 2, kExitInternal = 3 };

ReportEnvelope cmd_verify(const JobConfig& config);
ReportEnvelope cmd_tables(const JobConfig& config);
ReportEnvelope cmd_branching(const JobConfig& config);
ReportEnvelope cmd_chartab(const JobConfig& config);
ReportEnvelope cmd_classes(const JobConfig& config);

struct JobResult {
  int exit_code = kExitPass;
  /// Present unless the job aborted with an error.
  std::optional<ReportEnvelope> report;
  /// Error text for exit codes 2 and 3.
  std::string diagnostic;
};

/// Validates the config and dispatches on config.subcommand. Cap, config
/// and unsupported-input errors give exit 2, faults in exact arithmetic or
/// any other exception exit 3, a failed check exit 1.
JobResult run_job(const JobConfig& config);

}  // namespace ggr
