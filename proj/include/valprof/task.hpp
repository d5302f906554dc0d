#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "valprof/rng.hpp"

namespace valprof {

// ============================================================================
// Two-armed bandit with a latent volatility context and an advisory hint cue.
//
// Contexts alternate in fixed-length blocks (volatile first). In volatile
// blocks the better arm also flips on a fast fixed schedule; in stable blocks
// it is frozen for the whole block. The context/arm schedule is precomputed
// from the seed and never depends on the agent's actions.
// ============================================================================

enum class Context : int { kVolatile = 0, kStable = 1 };
enum class Arm : int { kLeft = 0, kRight = 1 };
enum class Action : int { kStart = 0, kHint = 1, kLeft = 2, kRight = 3 };
enum class HintObs : int { kNull = 0, kLeft = 1, kRight = 2 };
enum class RewardObs : int { kNull = 0, kLoss = 1, kWin = 2 };

inline constexpr int kNumActions = 4;

struct Observation {
    HintObs hint = HintObs::kNull;
    RewardObs reward = RewardObs::kNull;
    Action choice_echo = Action::kStart;  // always equals the executed action
};

// Win probabilities for choosing the better / worse arm within one context.
struct RewardPair {
    double good = 0.0;
    double bad = 0.0;
};

struct TaskConfig {
    int n_trials = 400;
    int context_block_len = 40;
    int volatile_arm_switch_period = 10;
    RewardPair p_reward_volatile{0.70, 0.30};
    RewardPair p_reward_stable{0.90, 0.10};
    double hint_accuracy = 0.85;  // same in both contexts
    std::uint64_t seed = 42;

    // Throws ConfigError on hard violations; returns human-readable warnings
    // for soft ones (e.g. n_trials not a whole number of blocks).
    std::vector<std::string> validate() const;
};

struct EnvState {
    int trial_index = 0;
    Context context = Context::kVolatile;
    Arm better_arm = Arm::kLeft;
};

class Environment {
  public:
    explicit Environment(const TaskConfig& config);

    // Emits the trial's observation for `action` and advances the schedule.
    // Throws RuntimeError once n_trials steps have been taken.
    Observation step(Action action);

    const EnvState& state() const { return state_; }
    const TaskConfig& config() const { return config_; }
    bool done() const { return state_.trial_index >= config_.n_trials; }

    // Ground truth for trial t, fixed at construction.
    Context context_at(int trial) const { return schedule_[trial].context; }
    Arm better_arm_at(int trial) const { return schedule_[trial].better_arm; }

  private:
    TaskConfig config_;
    std::vector<EnvState> schedule_;
    EnvState state_;
    RngStream rng_;
};

const char* to_string(Context c);
const char* to_string(Arm a);
const char* to_string(Action a);
const char* to_string(HintObs o);
const char* to_string(RewardObs o);

}  // namespace valprof
