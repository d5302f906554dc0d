#include "valprof/policy.hpp"

#include <algorithm>
#include <cmath>

#include "valprof/errors.hpp"

namespace valprof {

namespace {

// softmax with max-subtraction; logits must be finite.
template <std::size_t N>
std::array<double, N> stable_softmax(const std::array<double, N>& logits) {
    double mx = logits[0];
    for (double v : logits) {
        if (!std::isfinite(v)) throw RuntimeError("softmax: non-finite logit");
        mx = std::max(mx, v);
    }
    std::array<double, N> out{};
    double z = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = std::exp(logits[i] - mx);
        z += out[i];
    }
    for (double& v : out) v /= z;
    return out;
}

}  // namespace

std::array<double, kNumRewardObs> preference_dist(
    const std::array<double, kNumRewardObs>& c_eff) {
    return stable_softmax(c_eff);
}

PredictedOutcomes predicted_outcomes(const FactorizedBeliefs& beliefs, Action action,
                                     const GenerativeModel& model) {
    const FactorizedBeliefs qs = predict(beliefs, action, model);

    // Predicted outcome distributions and expected conditional entropies,
    // accumulated over the (factorized) joint predictive state.
    PredictedOutcomes out;
    for (int c = 0; c < kNumContexts; ++c) {
        if (qs.ctx[c] == 0.0) continue;
        for (int a = 0; a < kNumArms; ++a) {
            if (qs.arm[a] == 0.0) continue;
            for (int ch = 0; ch < kNumChoiceStates; ++ch) {
                const double ps = qs.ctx[c] * qs.arm[a] * qs.choice[ch];
                if (ps == 0.0) continue;
                const double* ah = model.a_hint[c][a][ch];
                const double* ar = model.a_reward[c][a][ch];
                const double* ae = model.a_echo[c][a][ch];
                for (int o = 0; o < kNumHintObs; ++o) out.hint[o] += ps * ah[o];
                for (int o = 0; o < kNumRewardObs; ++o) out.reward[o] += ps * ar[o];
                for (int o = 0; o < kNumChoiceStates; ++o) out.echo[o] += ps * ae[o];
                out.conditional_entropy += ps * (entropy({ah, kNumHintObs}) +
                                                 entropy({ar, kNumRewardObs}) +
                                                 entropy({ae, kNumChoiceStates}));
            }
        }
    }
    return out;
}

PolicyEvaluation expected_free_energy(const FactorizedBeliefs& beliefs,
                                      const GenerativeModel& model,
                                      const std::array<double, kNumRewardObs>& c_eff) {
    const std::array<double, kNumRewardObs> pref = preference_dist(c_eff);

    PolicyEvaluation ev;
    for (int act = 0; act < kNumActions; ++act) {
        const PredictedOutcomes po =
            predicted_outcomes(beliefs, static_cast<Action>(act), model);

        // Risk: KL from the predicted reward outcomes to the preferences.
        // pref is strictly positive (finite logits), so the KL is finite.
        double risk = 0.0;
        for (int o = 0; o < kNumRewardObs; ++o)
            if (po.reward[o] > 0.0) risk += po.reward[o] * std::log(po.reward[o] / pref[o]);

        // Epistemic value: predicted-outcome entropy minus expected
        // conditional entropy, summed over every modality.
        const double ig = entropy(po.hint) + entropy(po.reward) + entropy(po.echo) -
                          po.conditional_entropy;

        ev.risk[act] = risk;
        ev.info_gain[act] = ig;
        ev.G[act] = risk - ig;
    }
    return ev;
}

std::array<double, kNumActions> policy_posterior(
    const std::array<double, kNumActions>& G,
    const std::array<double, kNumActions>& xi_eff, double gamma_eff) {
    if (!std::isfinite(gamma_eff) || gamma_eff < 0.0)
        throw RuntimeError("policy_posterior: invalid gamma");

    double xi_mean = 0.0;
    for (double v : xi_eff) xi_mean += v;
    xi_mean /= kNumActions;

    std::array<double, kNumActions> logits{};
    for (int a = 0; a < kNumActions; ++a) {
        if (!std::isfinite(G[a])) throw RuntimeError("policy_posterior: non-finite G");
        logits[a] = -gamma_eff * G[a] + (xi_eff[a] - xi_mean);
    }
    return stable_softmax(logits);
}

Action sample_action(const std::array<double, kNumActions>& posterior, RngStream& rng) {
    return static_cast<Action>(rng.categorical(posterior));
}

double action_loglik(const std::array<double, kNumActions>& posterior, Action action,
                     bool* floored) {
    double p = posterior[static_cast<int>(action)];
    const bool hit_floor = !(p >= kActionProbFloor);
    if (hit_floor) p = kActionProbFloor;
    if (floored) *floored = hit_floor;
    return std::log(p);
}

}  // namespace valprof
