#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "valprof/fitting.hpp"

namespace valprof {

// ============================================================================
// Model-recovery experiment: simulate every generator, fit every Bayesian
// candidate to every run blind, cross-validate, and aggregate AIC / held-out
// log-likelihood confusion matrices across runs.
// ============================================================================

struct ExperimentConfig {
    TaskConfig task;
    ModelHyperParams hyper;
    std::vector<AgentSpec> generators;  // defaults: M1, M2, M3, EpsGreedy, SoftmaxQ
    int runs_per_generator = 5;
    std::uint64_t base_seed = 42;
    int jobs = 0;  // worker threads; 0 = hardware concurrency

    static ExperimentConfig defaults();
    void validate() const;
};

inline const std::vector<AgentKind> kFittedKinds{AgentKind::kM1, AgentKind::kM2,
                                                 AgentKind::kM3};

struct CellStat {
    double mean = 0.0;
    double se = 0.0;
};

// One confusion matrix: rows = generators, columns = fitted kinds.
struct ConfusionMatrix {
    std::vector<std::string> generator_names;
    std::vector<CellStat> cells;  // row-major [generator][fitted kind]

    const CellStat& at(std::size_t gen, std::size_t fit) const {
        return cells[gen * kFittedKinds.size() + fit];
    }
};

struct RowWinner {
    std::string generator;
    AgentKind winner = AgentKind::kM1;
    double margin = 0.0;  // |winner - runner-up| on the row metric
    bool tie = false;     // winner decided by lower column index
};

struct RunFits {
    std::string generator;
    int run_index = 0;
    std::uint64_t run_seed = 0;
    std::vector<FitResult> fits;  // one per fitted kind, kFittedKinds order
};

struct RecoveryResult {
    ExperimentConfig config;
    std::vector<RunFits> runs;  // generator-major, run-minor
    ConfusionMatrix aic;        // winner per row = min
    ConfusionMatrix loglik;     // winner per row = max
};

std::uint64_t run_seed_for(const ExperimentConfig& config, int run_index);

// Runs the full experiment. Worker threads only parallelize independent
// (generator, run) fits; all aggregation is order-independent, so results are
// identical for any job count.
RecoveryResult run_recovery(const ExperimentConfig& config);

// Winner per generator row; `minimize` selects the metric direction.
std::vector<RowWinner> summarize_winners(const ConfusionMatrix& m, bool minimize);

}  // namespace valprof
