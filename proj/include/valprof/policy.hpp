#pragma once

#include <array>

#include "valprof/beliefs.hpp"
#include "valprof/rng.hpp"

namespace valprof {

inline constexpr double kActionProbFloor = 1e-12;

// Per-policy expected free energy decomposition. G = risk - info_gain.
// risk is the KL divergence from the predicted reward-outcome distribution to
// the preference distribution softmax(c_eff); info_gain is the expected
// reduction in state uncertainty, summed over all three modalities.
struct PolicyEvaluation {
    std::array<double, kNumActions> G{};
    std::array<double, kNumActions> risk{};
    std::array<double, kNumActions> info_gain{};
};

// Predictive outcome distributions for one action, plus the expected
// conditional outcome entropy (summed over modalities) of the predictive
// state. This is the quantity expected_free_energy scores.
struct PredictedOutcomes {
    std::array<double, kNumHintObs> hint{};
    std::array<double, kNumRewardObs> reward{};
    std::array<double, kNumChoiceStates> echo{};
    double conditional_entropy = 0.0;
};

PredictedOutcomes predicted_outcomes(const FactorizedBeliefs& beliefs, Action action,
                                     const GenerativeModel& model);

PolicyEvaluation expected_free_energy(const FactorizedBeliefs& beliefs,
                                      const GenerativeModel& model,
                                      const std::array<double, kNumRewardObs>& c_eff);

// softmax(-gamma_eff * G + xi_eff), mean-centering xi_eff and subtracting the
// max logit before exponentiation. Throws RuntimeError on non-finite inputs
// or gamma_eff < 0.
std::array<double, kNumActions> policy_posterior(
    const std::array<double, kNumActions>& G,
    const std::array<double, kNumActions>& xi_eff, double gamma_eff);

Action sample_action(const std::array<double, kNumActions>& posterior, RngStream& rng);

// log posterior mass of `action`, floored at kActionProbFloor. If `floored`
// is non-null it is set when the floor was applied.
double action_loglik(const std::array<double, kNumActions>& posterior, Action action,
                     bool* floored = nullptr);

std::array<double, kNumRewardObs> preference_dist(
    const std::array<double, kNumRewardObs>& c_eff);

}  // namespace valprof
