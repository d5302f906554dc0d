#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valprof/agents.hpp"

namespace valprof {

// Everything observable about one closed-loop trial, plus the agent-side
// diagnostics needed by the mechanism analyses.
struct TrialRecord {
    int trial = 0;
    Context true_context = Context::kVolatile;
    Arm true_better_arm = Arm::kLeft;
    Action action = Action::kStart;
    Observation obs;
    std::optional<double> q_ctx_volatile;
    std::optional<double> q_arm_left;
    std::optional<double> w0, w1;
    std::optional<double> gamma_eff;
    std::optional<double> xi_hint_eff;
    double action_loglik = 0.0;
};

// The (action, observation) sequence handed to fitting, with ground truth
// kept alongside for analysis. Fitting never reads `generator` or
// `ground_truth`; cross_validate accepts only the trial sequence.
struct RunData {
    std::vector<std::pair<Action, Observation>> trials;
    std::vector<EnvState> ground_truth;
    std::string generator;
    std::uint64_t run_seed = 0;

    void validate() const;  // echo must match action on every trial
};

struct SimResult {
    RunData data;
    std::vector<TrialRecord> records;
};

// Simulates one full closed-loop run. Environment and agent noise come from
// sub-streams derived from run_seed (tags folded with the agent kind so
// different generator families do not share noise).
SimResult simulate_run(const AgentSpec& spec, const TaskConfig& task,
                       const GenerativeModel& model, std::uint64_t run_seed);

}  // namespace valprof
