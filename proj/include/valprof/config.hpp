#pragma once

#include <iosfwd>
#include <string>

#include "valprof/recovery.hpp"

namespace valprof {

// Full tool configuration: task + model hyperparameters + experiment layout +
// per-family generator parameters + the simulate-command selection. Stored on
// disk as a flat sectioned key = value file; unknown sections or keys are
// configuration errors, missing ones keep their defaults.
struct FullConfig {
    TaskConfig task;
    ModelHyperParams hyper;

    // [experiment]
    std::uint64_t base_seed = 42;
    int runs_per_generator = 5;
    std::vector<std::string> generator_names{"M1", "M2", "M3", "EpsGreedy", "SoftmaxQ"};
    int jobs = 0;

    // [simulate]
    std::string simulate_generator = "M3";
    int simulate_runs = 5;

    // [agents.*]
    M1Params m1;
    M2Params m2;
    M3Params m3;
    EpsGreedyParams eps_greedy;
    SoftmaxQParams softmax_q;

    AgentSpec agent_by_name(const std::string& name) const;
    ExperimentConfig experiment() const;  // validated
};

FullConfig parse_config(std::istream& in, const std::string& origin = "<stream>");
FullConfig load_config(const std::string& path);
void write_config(const FullConfig& config, std::ostream& out);
void save_config(const FullConfig& config, const std::string& path);

}  // namespace valprof
