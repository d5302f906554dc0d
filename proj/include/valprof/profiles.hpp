#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "valprof/generative_model.hpp"

namespace valprof {

// ============================================================================
// Value profiles: bundled preference/prior/precision parameter sets that are
// mixed trial-by-trial according to the agent's beliefs about the latent
// context. Logits are stored raw (interpretable scale); gauge fixing by
// mean-centering happens where a softmax is taken.
// ============================================================================

struct ValueProfile {
    std::array<double, kNumRewardObs> c_logits{};  // outcome preferences (null, loss, win)
    std::array<double, kNumActions> xi_logits{};   // policy prior (start, hint, left, right)
    double gamma = 1.0;                            // precision, > 0
};

// Row-stochastic map from context states to profiles. Row i gives the profile
// weights contributed by context state i. Experiments use the 2x2 identity
// (profile 0 anchored to the volatile state) but any shape is accepted.
struct AssignmentMatrix {
    std::size_t n_states = 0;
    std::size_t n_profiles = 0;
    std::vector<double> data;  // row-major [state][profile]

    static AssignmentMatrix identity(std::size_t n);
    double at(std::size_t state, std::size_t profile) const {
        return data[state * n_profiles + profile];
    }
    void validate() const;  // rows sum to 1 within 1e-10, entries in [0,1]
};

// w(k) = sum_s q(s) Z[s,k]. Sums to 1 whenever q does.
std::vector<double> profile_weights(std::span<const double> q_context,
                                    const AssignmentMatrix& z);

struct EffectiveParams {
    std::array<double, kNumRewardObs> c_eff{};
    std::array<double, kNumActions> xi_eff{};
    double gamma_eff = 0.0;
    std::vector<double> weights;
};

// Convex mixture of profiles; linear in C, xi and gamma.
EffectiveParams mix(std::span<const ValueProfile> profiles,
                    std::span<const double> weights);

}  // namespace valprof
