#include "valprof/simulate.hpp"

#include "valprof/errors.hpp"

namespace valprof {

void RunData::validate() const {
    if (ground_truth.size() != trials.size())
        throw RuntimeError("RunData: ground truth length mismatch");
    for (std::size_t t = 0; t < trials.size(); ++t) {
        const auto& [action, obs] = trials[t];
        if (obs.choice_echo != action)
            throw RuntimeError("RunData: choice echo disagrees with action");
        const bool arm_action = action == Action::kLeft || action == Action::kRight;
        if (arm_action != (obs.reward != RewardObs::kNull))
            throw RuntimeError("RunData: reward nullness disagrees with action");
        if ((action == Action::kHint) != (obs.hint != HintObs::kNull))
            throw RuntimeError("RunData: hint nullness disagrees with action");
    }
}

SimResult simulate_run(const AgentSpec& spec, const TaskConfig& task,
                       const GenerativeModel& model, std::uint64_t run_seed) {
    spec.validate();

    TaskConfig env_task = task;
    // Fold the generator family into the env/agent streams so each generator
    // sees its own draws even under a shared run seed.
    const std::uint64_t kind_tag = static_cast<std::uint64_t>(spec.kind) + 1;
    env_task.seed = derive_stream(run_seed, kind_tag);
    Environment env(env_task);
    RngStream agent_rng(
        derive_stream(derive_stream(run_seed, kind_tag), stream_tag::kAgent));

    AgentState state = agent_init(spec, model);

    SimResult result;
    result.data.generator = to_string(spec.kind);
    result.data.run_seed = run_seed;
    result.data.trials.reserve(task.n_trials);
    result.data.ground_truth.reserve(task.n_trials);
    result.records.reserve(task.n_trials);

    while (!env.done()) {
        const EnvState truth = env.state();
        const Decision decision = agent_decide(spec, state, model);
        const Action action = sample_action(decision.posterior, agent_rng);
        const Observation obs = env.step(action);

        TrialRecord rec;
        rec.trial = truth.trial_index;
        rec.true_context = truth.context;
        rec.true_better_arm = truth.better_arm;
        rec.action = action;
        rec.obs = obs;
        rec.q_ctx_volatile = decision.q_ctx_volatile;
        rec.q_arm_left = decision.q_arm_left;
        if (decision.weights) {
            rec.w0 = (*decision.weights)[0];
            rec.w1 = (*decision.weights)[1];
        }
        rec.gamma_eff = decision.gamma_eff;
        rec.xi_hint_eff = decision.xi_hint_eff;
        rec.action_loglik = action_loglik(decision.posterior, action);

        result.data.trials.emplace_back(action, obs);
        result.data.ground_truth.push_back(truth);
        result.records.push_back(rec);

        state = agent_step(spec, state, action, obs, model);
    }

    result.data.validate();
    return result;
}

}  // namespace valprof
