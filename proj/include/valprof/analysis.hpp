#pragma once

#include <vector>

#include "valprof/simulate.hpp"

namespace valprof {

// ============================================================================
// Mechanism analyses over closed-loop simulation records (one inner vector
// per run). These back the figure panels: reversal-aligned profile weights,
// reversal-aligned effective precision, context-conditional behaviour, and
// the pure-volatile profile-stability control.
// ============================================================================

enum class ReversalDirection : int { kVolToStable = 0, kStableToVol = 1, kAny = 2 };

// Trials at which the context flips in the given direction (always block
// boundaries; the first block never counts as a reversal).
std::vector<int> reversal_trials(const TaskConfig& task, ReversalDirection dir);

struct AlignedWeightSeries {
    std::vector<int> offsets;  // relative to the reversal trial
    std::vector<double> mean_w0, se_w0;
    std::vector<double> mean_w1, se_w1;
    std::vector<int> n_events;  // events contributing at each offset
};

// Pools every reversal of `dir` across runs; offsets outside [0, n_trials)
// are dropped per event. Requires profile weights on every record (M3 runs).
AlignedWeightSeries align_to_reversals(const std::vector<std::vector<TrialRecord>>& runs,
                                       const TaskConfig& task, ReversalDirection dir,
                                       int pre = 10, int post = 40);

struct AlignedGammaSeries {
    std::vector<int> offsets;
    std::vector<double> mean_gamma, se_gamma;
    std::vector<int> n_events;
};

// Same alignment for effective precision, pooled over both reversal
// directions by default. Requires gamma_eff on every record.
AlignedGammaSeries reversal_aligned_gamma(const std::vector<std::vector<TrialRecord>>& runs,
                                          const TaskConfig& task,
                                          ReversalDirection dir = ReversalDirection::kAny,
                                          int pre = 20, int post = 20);

struct ContextStats {
    double gamma_volatile = 0.0;
    double gamma_stable = 0.0;
    double hint_rate_volatile = 0.0;
    double hint_rate_stable = 0.0;
    int n_volatile = 0;
    int n_stable = 0;
};

// Means conditioned on the true context. gamma entries are NaN when the
// records carry no gamma_eff (model-free runs).
ContextStats context_conditional_stats(const std::vector<std::vector<TrialRecord>>& runs);

struct StabilityResult {
    std::vector<double> mean_w0, mean_w1;   // per trial, averaged over sims
    std::vector<char> is_micro_reversal;    // per trial
    double reversal_mean_abs_dw0 = 0.0;     // |dw0| at marked trials
    double baseline_mean_abs_dw0 = 0.0;     // |dw0| elsewhere
    double effect = 0.0;                    // reversal - baseline
    double ci_lo = 0.0, ci_hi = 0.0;        // bootstrap 95% CI of the effect
    int n_sims = 0;
};

// Re-simulates the agent in a pure-volatile task (one context block covering
// every trial, micro-reversals on the usual period) and checks that profile
// weights do not react to the micro-reversal markers: the |dw0| mean
// difference gets a seeded percentile-bootstrap CI that should contain 0.
StabilityResult profile_stability(const AgentSpec& spec, const TaskConfig& base_task,
                                  const ModelHyperParams& hyper, int n_sims = 10,
                                  int n_trials = 200, std::uint64_t seed = 42);

}  // namespace valprof
