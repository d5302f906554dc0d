#pragma once

#include <array>

#include "valprof/generative_model.hpp"

namespace valprof {

// Factorized beliefs over the three hidden-state factors. The update step
// forms the full 16-state joint (product of factor marginals), multiplies in
// all three observation likelihoods, normalizes, and re-marginalizes; only
// the factor marginals are carried across trials.
struct FactorizedBeliefs {
    std::array<double, kNumContexts> ctx{};
    std::array<double, kNumArms> arm{};
    std::array<double, kNumChoiceStates> choice{};
};

FactorizedBeliefs initial_beliefs(const GenerativeModel& model);

// One-step prediction through B under `action`. The choice factor becomes a
// one-hot at the action; the latent factors drift through their stay matrices.
FactorizedBeliefs predict(const FactorizedBeliefs& beliefs, Action action,
                          const GenerativeModel& model);

// Exact joint Bayes update of a (predictive) belief against one observation.
// Throws DegenerateEvidenceError if the observation has zero probability
// under every joint state.
FactorizedBeliefs update(const FactorizedBeliefs& prior, const Observation& obs,
                         const GenerativeModel& model);

double entropy(std::span<const double> p);  // natural log, 0 log 0 = 0

}  // namespace valprof
