#include "valprof/beliefs.hpp"

#include <cmath>

#include "valprof/errors.hpp"

namespace valprof {

double entropy(std::span<const double> p) {
    double h = 0.0;
    for (double pi : p)
        if (pi > 0.0) h -= pi * std::log(pi);
    return h;
}

FactorizedBeliefs initial_beliefs(const GenerativeModel& model) {
    FactorizedBeliefs b;
    b.ctx = model.d_ctx;
    b.arm = model.d_arm;
    b.choice = model.d_choice;
    return b;
}

FactorizedBeliefs predict(const FactorizedBeliefs& beliefs, Action action,
                          const GenerativeModel& model) {
    FactorizedBeliefs out;
    for (int to = 0; to < kNumContexts; ++to) {
        double s = 0.0;
        for (int from = 0; from < kNumContexts; ++from)
            s += model.b_ctx[to][from] * beliefs.ctx[from];
        out.ctx[to] = s;
    }
    for (int to = 0; to < kNumArms; ++to) {
        double s = 0.0;
        for (int from = 0; from < kNumArms; ++from)
            s += model.b_arm[to][from] * beliefs.arm[from];
        out.arm[to] = s;
    }
    // b_choice[action] maps every predecessor to the taken action.
    for (int to = 0; to < kNumChoiceStates; ++to) out.choice[to] = 0.0;
    out.choice[static_cast<int>(action)] = 1.0;
    return out;
}

FactorizedBeliefs update(const FactorizedBeliefs& prior, const Observation& obs,
                         const GenerativeModel& model) {
    const int oh = static_cast<int>(obs.hint);
    const int orw = static_cast<int>(obs.reward);
    const int oe = static_cast<int>(obs.choice_echo);

    // Joint posterior over the 16 states, then back to factor marginals.
    double joint[kNumContexts][kNumArms][kNumChoiceStates];
    double total = 0.0;
    for (int c = 0; c < kNumContexts; ++c)
        for (int a = 0; a < kNumArms; ++a)
            for (int ch = 0; ch < kNumChoiceStates; ++ch) {
                const double p = prior.ctx[c] * prior.arm[a] * prior.choice[ch] *
                                 model.a_hint[c][a][ch][oh] *
                                 model.a_reward[c][a][ch][orw] *
                                 model.a_echo[c][a][ch][oe];
                joint[c][a][ch] = p;
                total += p;
            }

    if (total <= 0.0)
        throw DegenerateEvidenceError(
            "belief update: observation has zero probability under every joint state");

    FactorizedBeliefs post;
    post.ctx.fill(0.0);
    post.arm.fill(0.0);
    post.choice.fill(0.0);
    for (int c = 0; c < kNumContexts; ++c)
        for (int a = 0; a < kNumArms; ++a)
            for (int ch = 0; ch < kNumChoiceStates; ++ch) {
                const double p = joint[c][a][ch] / total;
                post.ctx[c] += p;
                post.arm[a] += p;
                post.choice[ch] += p;
            }
    return post;
}

}  // namespace valprof
