#pragma once

#include <utility>
#include <vector>

#include "valprof/simulate.hpp"

namespace valprof {

using TrialSeq = std::vector<std::pair<Action, Observation>>;

// Mask over trials; empty means "all". Values are 0/1.
using TrialMask = std::vector<char>;

// ============================================================================
// Likelihood evaluation and grid fitting.
//
// Replay always walks the full sequence (the agent's internal state is driven
// by every trial) and sums log-likelihoods over masked trials only. For the
// Bayesian families the belief trajectory, the per-policy expected free
// energies, the arm-entropy series and the profile-weight series do not
// depend on the searched parameters, so they are computed once per run and
// shared by every candidate (ReplayTrajectory). sequence_loglik is the plain
// reference path; the two agree exactly and a test pins that.
// ============================================================================

struct SequenceLoglik {
    double loglik = 0.0;
    int flagged_trials = 0;  // floored action probability or degenerate evidence
};

SequenceLoglik sequence_loglik(const AgentSpec& spec, const TrialSeq& trials,
                               const GenerativeModel& model,
                               const TrialMask& mask = {});

struct ReplayTrajectory {
    std::vector<std::array<double, kNumActions>> G;  // per trial, standard C
    std::vector<double> arm_entropy;                 // H(q_arm) at decision time
    std::vector<std::array<double, 2>> weights;      // identity-Z profile weights
    std::vector<int> actions;

    static ReplayTrajectory build(const TrialSeq& trials, const GenerativeModel& model);
    int n_trials() const { return static_cast<int>(actions.size()); }
};

// Train log-likelihood of one Bayesian candidate against a prebuilt
// trajectory, masked trials only.
double candidate_loglik(const AgentSpec& spec, const ReplayTrajectory& traj,
                        const TrialMask& mask);

struct GridPoint {
    AgentSpec spec;
    double train_ll = 0.0;
};

struct GridSearchResult {
    AgentSpec best;
    double best_train_ll = 0.0;
    std::vector<GridPoint> trace;  // every evaluated candidate, in order
};

// Two-stage (M1, M2) or single-stage (M3) grid search restricted to the
// published candidate sets. Ties go to the lexicographically smallest
// parameter tuple. Only Bayesian kinds are searchable.
GridSearchResult grid_search(AgentKind kind, const ReplayTrajectory& traj,
                             const TrialMask& train_mask);

struct FoldFit {
    int fold = 0;
    AgentSpec best;
    double train_ll = 0.0;
    double test_ll = 0.0;
};

struct FitResult {
    AgentKind kind = AgentKind::kM1;
    std::vector<FoldFit> folds;
    double mean_test_ll = 0.0;
    double se_test_ll = 0.0;
    double aic = 0.0;  // 2 p - 2 mean_test_ll
    double bic = 0.0;  // p ln(n_test) - 2 mean_test_ll
};

inline constexpr int kNumFolds = 5;

// 5-fold blocked cross-validation (consecutive fold-sized test blocks).
// Deterministic; requires n_trials divisible by kNumFolds.
FitResult cross_validate(AgentKind kind, const TrialSeq& trials,
                         const GenerativeModel& model);

double mean(std::span<const double> xs);
double sample_sd(std::span<const double> xs);  // n-1 denominator, 0 for n < 2
double standard_error(std::span<const double> xs);

}  // namespace valprof
