#pragma once

#include <string>

#include "valprof/analysis.hpp"
#include "valprof/config.hpp"

namespace valprof {

// Formats a double with 6 significant digits ("%.6g"); the single formatting
// path for every CSV/JSON/SVG number, so repeated invocations are
// byte-identical.
std::string fmt6(double x);

// --- simulate ---------------------------------------------------------------
void write_run_csv(const std::string& path, int run_id,
                   const std::vector<TrialRecord>& records);

// --- recover ----------------------------------------------------------------
// Directory layout written by cmd_recover:
//   aic_confusion.csv, ll_confusion.csv, param_recovery.csv, winners.txt,
//   resolved_config.cfg, fits/fit_<generator>_run<k>_<fitted>.json
void write_recovery_outputs(const std::string& out_dir, const FullConfig& config,
                            const RecoveryResult& result);

// Reads the per-run fold fits back for cmd_analyze. Returns the fold-0 best
// spec of `fitted` on generator `gen`, run `run`.
AgentSpec load_fitted_spec(const std::string& fit_dir, const std::string& gen, int run,
                           AgentKind fitted);

// --- analyze ----------------------------------------------------------------
// Reads resolved_config.cfg + fit JSONs from fit_dir, re-simulates the fitted
// models closed-loop, writes per-panel CSVs and SVG figures into out_dir.
void run_analysis(const std::string& fit_dir, const std::string& out_dir);

}  // namespace valprof
