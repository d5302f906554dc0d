#include "valprof/generative_model.hpp"

#include <cmath>

#include "valprof/errors.hpp"

namespace valprof {

namespace {

void check_unit_sum(const double* p, int n, const char* what) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        if (p[i] < 0.0) throw ConfigError(std::string(what) + ": negative probability");
        s += p[i];
    }
    if (std::abs(s - 1.0) > 1e-10)
        throw ConfigError(std::string(what) + ": distribution does not sum to 1");
}

}  // namespace

GenerativeModel build_model(const TaskConfig& task, const ModelHyperParams& hyper) {
    task.validate();
    if (!(hyper.ctx_stay > 0.0 && hyper.ctx_stay < 1.0))
        throw ConfigError("ctx_stay must be in (0, 1)");
    if (!(hyper.arm_stay > 0.0 && hyper.arm_stay < 1.0))
        throw ConfigError("arm_stay must be in (0, 1)");

    GenerativeModel m{};
    m.hyper = hyper;

    const double acc = task.hint_accuracy;
    for (int c = 0; c < kNumContexts; ++c) {
        for (int a = 0; a < kNumArms; ++a) {
            for (int ch = 0; ch < kNumChoiceStates; ++ch) {
                // Hint modality: informative only while sampling the cue,
                // with the same accuracy in both contexts.
                if (ch == static_cast<int>(Action::kHint)) {
                    m.a_hint[c][a][ch][static_cast<int>(HintObs::kLeft)] =
                        (a == static_cast<int>(Arm::kLeft)) ? acc : 1.0 - acc;
                    m.a_hint[c][a][ch][static_cast<int>(HintObs::kRight)] =
                        (a == static_cast<int>(Arm::kRight)) ? acc : 1.0 - acc;
                } else {
                    m.a_hint[c][a][ch][static_cast<int>(HintObs::kNull)] = 1.0;
                }

                // Reward modality: Bernoulli win/loss for arm choices, null
                // otherwise. Win probability depends on whether the chosen
                // arm matches the better arm, at context-specific contrast.
                if (ch == static_cast<int>(Action::kLeft) ||
                    ch == static_cast<int>(Action::kRight)) {
                    const RewardPair& pair = (c == static_cast<int>(Context::kVolatile))
                                                 ? task.p_reward_volatile
                                                 : task.p_reward_stable;
                    const bool match = (ch == static_cast<int>(Action::kLeft)) ==
                                       (a == static_cast<int>(Arm::kLeft));
                    const double p_win = match ? pair.good : pair.bad;
                    m.a_reward[c][a][ch][static_cast<int>(RewardObs::kWin)] = p_win;
                    m.a_reward[c][a][ch][static_cast<int>(RewardObs::kLoss)] = 1.0 - p_win;
                } else {
                    m.a_reward[c][a][ch][static_cast<int>(RewardObs::kNull)] = 1.0;
                }

                // Choice echo: identity on the choice state.
                m.a_echo[c][a][ch][ch] = 1.0;
            }
        }
    }

    for (int to = 0; to < kNumContexts; ++to)
        for (int from = 0; from < kNumContexts; ++from)
            m.b_ctx[to][from] = (to == from) ? hyper.ctx_stay : 1.0 - hyper.ctx_stay;
    for (int to = 0; to < kNumArms; ++to)
        for (int from = 0; from < kNumArms; ++from)
            m.b_arm[to][from] = (to == from) ? hyper.arm_stay : 1.0 - hyper.arm_stay;
    for (int act = 0; act < kNumActions; ++act)
        for (int from = 0; from < kNumChoiceStates; ++from)
            m.b_choice[act][act][from] = 1.0;

    m.d_ctx = {0.5, 0.5};
    m.d_arm = {0.5, 0.5};
    m.d_choice = {1.0, 0.0, 0.0, 0.0};

    // Construction-time stochasticity checks.
    for (int c = 0; c < kNumContexts; ++c)
        for (int a = 0; a < kNumArms; ++a)
            for (int ch = 0; ch < kNumChoiceStates; ++ch) {
                check_unit_sum(m.a_hint[c][a][ch], kNumHintObs, "A[hint]");
                check_unit_sum(m.a_reward[c][a][ch], kNumRewardObs, "A[reward]");
                check_unit_sum(m.a_echo[c][a][ch], kNumChoiceStates, "A[echo]");
            }
    for (int from = 0; from < kNumContexts; ++from) {
        double col[kNumContexts];
        for (int to = 0; to < kNumContexts; ++to) col[to] = m.b_ctx[to][from];
        check_unit_sum(col, kNumContexts, "B[context]");
    }
    for (int from = 0; from < kNumArms; ++from) {
        double col[kNumArms];
        for (int to = 0; to < kNumArms; ++to) col[to] = m.b_arm[to][from];
        check_unit_sum(col, kNumArms, "B[better_arm]");
    }
    for (int act = 0; act < kNumActions; ++act)
        for (int from = 0; from < kNumChoiceStates; ++from) {
            double col[kNumChoiceStates];
            for (int to = 0; to < kNumChoiceStates; ++to) col[to] = m.b_choice[act][to][from];
            check_unit_sum(col, kNumChoiceStates, "B[choice]");
        }
    check_unit_sum(m.d_ctx.data(), kNumContexts, "D[context]");
    check_unit_sum(m.d_arm.data(), kNumArms, "D[better_arm]");
    check_unit_sum(m.d_choice.data(), kNumChoiceStates, "D[choice]");

    return m;
}

}  // namespace valprof
