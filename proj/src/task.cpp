#include "valprof/task.hpp"

#include <sstream>

#include "valprof/errors.hpp"

namespace valprof {

namespace {

void require_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must be a probability, got " << p;
        throw ConfigError(msg.str());
    }
}

}  // namespace

std::vector<std::string> TaskConfig::validate() const {
    if (n_trials <= 0) throw ConfigError("n_trials must be positive");
    if (context_block_len <= 0) throw ConfigError("context_block_len must be positive");
    if (volatile_arm_switch_period <= 0)
        throw ConfigError("volatile_arm_switch_period must be positive");
    require_prob(p_reward_volatile.good, "p_reward_volatile.good");
    require_prob(p_reward_volatile.bad, "p_reward_volatile.bad");
    require_prob(p_reward_stable.good, "p_reward_stable.good");
    require_prob(p_reward_stable.bad, "p_reward_stable.bad");
    require_prob(hint_accuracy, "hint_accuracy");
    if (p_reward_volatile.good <= p_reward_volatile.bad)
        throw ConfigError("p_reward_volatile: good must exceed bad");
    if (p_reward_stable.good <= p_reward_stable.bad)
        throw ConfigError("p_reward_stable: good must exceed bad");

    std::vector<std::string> warnings;
    if (n_trials % context_block_len != 0) {
        std::ostringstream msg;
        msg << "n_trials (" << n_trials << ") is not a whole number of context blocks ("
            << context_block_len << "); the last block is truncated";
        warnings.push_back(msg.str());
    }
    return warnings;
}

Environment::Environment(const TaskConfig& config)
    : config_(config), rng_(derive_stream(config.seed, stream_tag::kEnv)) {
    config_.validate();

    // The context/better-arm schedule is fixed up front: one fresh arm draw
    // per block, arm flips every volatile_arm_switch_period trials inside
    // volatile blocks, strict context alternation starting volatile.
    schedule_.reserve(config_.n_trials);
    Arm arm = Arm::kLeft;
    for (int t = 0; t < config_.n_trials; ++t) {
        const int block = t / config_.context_block_len;
        const int in_block = t % config_.context_block_len;
        const Context ctx = (block % 2 == 0) ? Context::kVolatile : Context::kStable;
        if (in_block == 0) {
            arm = rng_.bernoulli(0.5) ? Arm::kRight : Arm::kLeft;
        } else if (ctx == Context::kVolatile &&
                   in_block % config_.volatile_arm_switch_period == 0) {
            arm = (arm == Arm::kLeft) ? Arm::kRight : Arm::kLeft;
        }
        schedule_.push_back(EnvState{t, ctx, arm});
    }
    state_ = schedule_.front();
}

Observation Environment::step(Action action) {
    if (done()) throw RuntimeError("Environment::step called past n_trials");

    const EnvState cur = schedule_[state_.trial_index];
    Observation obs;
    obs.choice_echo = action;

    switch (action) {
        case Action::kStart:
            break;
        case Action::kHint: {
            const bool truthful = rng_.bernoulli(config_.hint_accuracy);
            const Arm pointed =
                truthful ? cur.better_arm
                         : (cur.better_arm == Arm::kLeft ? Arm::kRight : Arm::kLeft);
            obs.hint = (pointed == Arm::kLeft) ? HintObs::kLeft : HintObs::kRight;
            break;
        }
        case Action::kLeft:
        case Action::kRight: {
            const bool picked_better =
                (action == Action::kLeft) == (cur.better_arm == Arm::kLeft);
            const RewardPair& pair = (cur.context == Context::kVolatile)
                                         ? config_.p_reward_volatile
                                         : config_.p_reward_stable;
            const double p_win = picked_better ? pair.good : pair.bad;
            obs.reward = rng_.bernoulli(p_win) ? RewardObs::kWin : RewardObs::kLoss;
            break;
        }
    }

    const int next = state_.trial_index + 1;
    if (next < config_.n_trials)
        state_ = schedule_[next];
    else
        state_.trial_index = next;
    return obs;
}

const char* to_string(Context c) {
    return c == Context::kVolatile ? "volatile" : "stable";
}
const char* to_string(Arm a) { return a == Arm::kLeft ? "left" : "right"; }
const char* to_string(Action a) {
    switch (a) {
        case Action::kStart: return "start";
        case Action::kHint: return "hint";
        case Action::kLeft: return "left";
        case Action::kRight: return "right";
    }
    return "?";
}
const char* to_string(HintObs o) {
    switch (o) {
        case HintObs::kNull: return "null";
        case HintObs::kLeft: return "left";
        case HintObs::kRight: return "right";
    }
    return "?";
}
const char* to_string(RewardObs o) {
    switch (o) {
        case RewardObs::kNull: return "null";
        case RewardObs::kLoss: return "loss";
        case RewardObs::kWin: return "win";
    }
    return "?";
}

}  // namespace valprof
