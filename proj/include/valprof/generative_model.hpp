#pragma once

#include <array>

#include "valprof/task.hpp"

namespace valprof {

// ============================================================================
// Discrete generative model shared by every Bayesian agent.
//
// Hidden state factors: context (2) x better_arm (2) x choice_state (4).
// Observation modalities: hint (3), reward (3), choice echo (4).
// Policies are the four depth-1 actions; the choice_state factor transitions
// deterministically to the taken action, the latent factors drift with fixed
// stay probabilities regardless of action.
// ============================================================================

inline constexpr int kNumContexts = 2;
inline constexpr int kNumArms = 2;
inline constexpr int kNumChoiceStates = 4;
inline constexpr int kNumHintObs = 3;
inline constexpr int kNumRewardObs = 3;

struct ModelHyperParams {
    double ctx_stay = 0.98;  // context self-transition probability
    double arm_stay = 0.95;  // better-arm self-transition probability
};

struct GenerativeModel {
    // Likelihoods indexed [context][arm][choice][outcome].
    double a_hint[kNumContexts][kNumArms][kNumChoiceStates][kNumHintObs];
    double a_reward[kNumContexts][kNumArms][kNumChoiceStates][kNumRewardObs];
    double a_echo[kNumContexts][kNumArms][kNumChoiceStates][kNumChoiceStates];

    // Transitions indexed [to][from]; choice additionally by action.
    double b_ctx[kNumContexts][kNumContexts];
    double b_arm[kNumArms][kNumArms];
    double b_choice[kNumActions][kNumChoiceStates][kNumChoiceStates];

    // Initial-state priors.
    std::array<double, kNumContexts> d_ctx;
    std::array<double, kNumArms> d_arm;
    std::array<double, kNumChoiceStates> d_choice;

    ModelHyperParams hyper;
};

// Builds the model from the task's observation statistics. Every likelihood
// column and transition column is checked to sum to 1 within 1e-10.
GenerativeModel build_model(const TaskConfig& task, const ModelHyperParams& hyper = {});

}  // namespace valprof
