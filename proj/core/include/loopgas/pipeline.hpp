#pragma once

#include <string>

#include "loopgas/config.hpp"
#include "loopgas/report.hpp"

namespace loopgas {

/// Exit codes shared with the command line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailure = 1,
    kExitConfigError = 2,
    kExitRuntimeError = 3,
};

struct PipelineOutcome {
    int exit_code = kExitOk;
    std::string message;
    std::vector<CheckRecord> records;
};

/// Hash of the physical/chain parameters only (box, potential, z, beta,
/// discretization, boundary, moves, seed, chains, burn-in, thinning).
/// Execution-length and output settings are excluded so a longer run can
/// resume a shorter run's checkpoints.
std::string physics_hash(const RunConfig& config);

/// Runs the chains, writes manifest, summary, occupancy (and density)
/// tables and periodic checkpoints into config.output_dir.  When
/// resume_from is nonempty, per-chain checkpoints are loaded from that
/// directory and the run continues bit-exactly.
PipelineOutcome run_pipeline(const RunConfig& config,
                             const std::string& resume_from = "");

/// Runs the selected validator suite and writes report files; exit code 0
/// iff every check passed (inapplicable checks are skipped, not failed).
PipelineOutcome validate_pipeline(const RunConfig& config);

/// Runs the sampler and the quadrature oracle on the same parameters and
/// writes a side-by-side comparison table; exit 0 iff all |z| <= 3.
PipelineOutcome oracle_compare_pipeline(const RunConfig& config);

}  // namespace loopgas
