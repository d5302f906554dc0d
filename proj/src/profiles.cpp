#include "valprof/profiles.hpp"

#include <cmath>
#include <sstream>

#include "valprof/errors.hpp"

namespace valprof {

AssignmentMatrix AssignmentMatrix::identity(std::size_t n) {
    AssignmentMatrix z;
    z.n_states = n;
    z.n_profiles = n;
    z.data.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z.data[i * n + i] = 1.0;
    return z;
}

void AssignmentMatrix::validate() const {
    if (n_states == 0 || n_profiles == 0 || data.size() != n_states * n_profiles)
        throw ConfigError("AssignmentMatrix: inconsistent dimensions");
    for (std::size_t s = 0; s < n_states; ++s) {
        double row = 0.0;
        for (std::size_t k = 0; k < n_profiles; ++k) {
            const double v = at(s, k);
            if (v < 0.0 || v > 1.0)
                throw ConfigError("AssignmentMatrix: entry outside [0, 1]");
            row += v;
        }
        if (std::abs(row - 1.0) > 1e-10)
            throw ConfigError("AssignmentMatrix: row does not sum to 1");
    }
}

std::vector<double> profile_weights(std::span<const double> q_context,
                                    const AssignmentMatrix& z) {
    z.validate();
    if (q_context.size() != z.n_states) {
        std::ostringstream msg;
        msg << "profile_weights: belief size " << q_context.size()
            << " does not match assignment rows " << z.n_states;
        throw ConfigError(msg.str());
    }
    std::vector<double> w(z.n_profiles, 0.0);
    for (std::size_t s = 0; s < z.n_states; ++s)
        for (std::size_t k = 0; k < z.n_profiles; ++k)
            w[k] += q_context[s] * z.at(s, k);
    return w;
}

EffectiveParams mix(std::span<const ValueProfile> profiles,
                    std::span<const double> weights) {
    if (profiles.empty()) throw ConfigError("mix: no profiles");
    if (profiles.size() != weights.size())
        throw ConfigError("mix: weight count does not match profile count");

    EffectiveParams eff;
    eff.weights.assign(weights.begin(), weights.end());
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        const ValueProfile& p = profiles[k];
        if (!(p.gamma > 0.0)) throw ConfigError("mix: profile gamma must be positive");
        const double w = weights[k];
        for (int o = 0; o < kNumRewardObs; ++o) eff.c_eff[o] += w * p.c_logits[o];
        for (int a = 0; a < kNumActions; ++a) eff.xi_eff[a] += w * p.xi_logits[a];
        eff.gamma_eff += w * p.gamma;
    }
    return eff;
}

}  // namespace valprof
