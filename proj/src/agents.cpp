#include "valprof/agents.hpp"

#include <cmath>

#include "valprof/errors.hpp"

namespace valprof {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(name) + " must be positive and finite");
}

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ConfigError(std::string(name) + " must lie in [0, 1]");
}

double q_reward(const Observation& obs) {
    switch (obs.reward) {
        case RewardObs::kWin: return 1.0;
        case RewardObs::kLoss: return -1.0;
        case RewardObs::kNull: return 0.0;
    }
    return 0.0;
}

}  // namespace

int AgentSpec::free_param_count() const {
    switch (kind) {
        case AgentKind::kM1: return 1;
        case AgentKind::kM2: return 2;
        case AgentKind::kM3: return 4;
        case AgentKind::kEpsGreedy:
        case AgentKind::kSoftmaxQ: return 2;
    }
    return 0;
}

std::vector<double> AgentSpec::params_tuple() const {
    switch (kind) {
        case AgentKind::kM1: {
            const auto& p = std::get<M1Params>(params);
            return {p.gamma};
        }
        case AgentKind::kM2: {
            const auto& p = std::get<M2Params>(params);
            return {p.gamma_base, p.kappa};
        }
        case AgentKind::kM3: {
            const auto& p = std::get<M3Params>(params);
            return {p.gamma0, p.gamma1, p.hint_scale, p.arm_scale};
        }
        case AgentKind::kEpsGreedy: {
            const auto& p = std::get<EpsGreedyParams>(params);
            return {p.epsilon, p.alpha};
        }
        case AgentKind::kSoftmaxQ: {
            const auto& p = std::get<SoftmaxQParams>(params);
            return {p.beta, p.alpha};
        }
    }
    return {};
}

void AgentSpec::validate() const {
    switch (kind) {
        case AgentKind::kM1:
            require_positive(std::get<M1Params>(params).gamma, "gamma");
            break;
        case AgentKind::kM2: {
            const auto& p = std::get<M2Params>(params);
            require_positive(p.gamma_base, "gamma_base");
            if (!(p.kappa >= 0.0) || !std::isfinite(p.kappa))
                throw ConfigError("kappa must be non-negative and finite");
            break;
        }
        case AgentKind::kM3: {
            const auto& p = std::get<M3Params>(params);
            require_positive(p.gamma0, "gamma0");
            require_positive(p.gamma1, "gamma1");
            require_positive(p.hint_scale, "hint_scale");
            require_positive(p.arm_scale, "arm_scale");
            break;
        }
        case AgentKind::kEpsGreedy: {
            const auto& p = std::get<EpsGreedyParams>(params);
            require_unit(p.epsilon, "epsilon");
            require_unit(p.alpha, "alpha");
            break;
        }
        case AgentKind::kSoftmaxQ: {
            const auto& p = std::get<SoftmaxQParams>(params);
            require_positive(p.beta, "beta");
            require_unit(p.alpha, "alpha");
            break;
        }
    }
}

const char* to_string(AgentKind k) {
    switch (k) {
        case AgentKind::kM1: return "M1";
        case AgentKind::kM2: return "M2";
        case AgentKind::kM3: return "M3";
        case AgentKind::kEpsGreedy: return "EpsGreedy";
        case AgentKind::kSoftmaxQ: return "SoftmaxQ";
    }
    return "?";
}

AgentKind agent_kind_from_string(const std::string& name) {
    if (name == "M1") return AgentKind::kM1;
    if (name == "M2") return AgentKind::kM2;
    if (name == "M3") return AgentKind::kM3;
    if (name == "EpsGreedy") return AgentKind::kEpsGreedy;
    if (name == "SoftmaxQ") return AgentKind::kSoftmaxQ;
    throw ConfigError("unknown agent kind: " + name);
}

AgentState agent_init(const AgentSpec& spec, const GenerativeModel& model) {
    spec.validate();
    AgentState st;
    if (spec.bayesian())
        st.rep = initial_beliefs(model);
    else
        st.rep = std::array<double, kNumActions>{0.0, 0.0, 0.0, 0.0};
    return st;
}

std::vector<ValueProfile> m3_profiles(const M3Params& p) {
    ValueProfile p0;
    p0.c_logits = kStandardC;
    p0.xi_logits = {0.0, kM3HintBase0 * p.hint_scale, 0.0 * p.arm_scale, 0.0 * p.arm_scale};
    p0.gamma = p.gamma0;
    ValueProfile p1;
    p1.c_logits = kStandardC;
    p1.xi_logits = {0.0, kM3HintBase1 * p.hint_scale, 0.0 * p.arm_scale, 0.0 * p.arm_scale};
    p1.gamma = p.gamma1;
    return {p0, p1};
}

Decision decide_from_profiles(std::span<const ValueProfile> profiles,
                              const AssignmentMatrix& z, const FactorizedBeliefs& beliefs,
                              const GenerativeModel& model) {
    // Weights come from the context marginal pushed one step through
    // B[context]: the predictive context prior for the upcoming trial.
    std::array<double, kNumContexts> ctx_pred{};
    for (int to = 0; to < kNumContexts; ++to)
        for (int from = 0; from < kNumContexts; ++from)
            ctx_pred[to] += model.b_ctx[to][from] * beliefs.ctx[from];

    const std::vector<double> w = profile_weights(ctx_pred, z);
    const EffectiveParams eff = mix(profiles, w);
    const PolicyEvaluation ev = expected_free_energy(beliefs, model, eff.c_eff);

    Decision d;
    d.posterior = policy_posterior(ev.G, eff.xi_eff, eff.gamma_eff);
    d.gamma_eff = eff.gamma_eff;
    d.xi_hint_eff = eff.xi_eff[static_cast<int>(Action::kHint)];
    if (w.size() == 2) d.weights = std::array<double, 2>{w[0], w[1]};
    d.q_ctx_volatile = beliefs.ctx[static_cast<int>(Context::kVolatile)];
    d.q_arm_left = beliefs.arm[static_cast<int>(Arm::kLeft)];
    return d;
}

Decision agent_decide(const AgentSpec& spec, const AgentState& state,
                      const GenerativeModel& model) {
    switch (spec.kind) {
        case AgentKind::kM1: {
            const auto& p = std::get<M1Params>(spec.params);
            const FactorizedBeliefs& b = state.beliefs();
            const PolicyEvaluation ev = expected_free_energy(b, model, kStandardC);
            Decision d;
            d.posterior = policy_posterior(ev.G, {0, 0, 0, 0}, p.gamma);
            d.gamma_eff = p.gamma;
            d.xi_hint_eff = 0.0;
            d.q_ctx_volatile = b.ctx[static_cast<int>(Context::kVolatile)];
            d.q_arm_left = b.arm[static_cast<int>(Arm::kLeft)];
            return d;
        }
        case AgentKind::kM2: {
            const auto& p = std::get<M2Params>(spec.params);
            const FactorizedBeliefs& b = state.beliefs();
            const double h = entropy(b.arm);
            const double gamma_t = p.gamma_base / (1.0 + p.kappa * h);
            const PolicyEvaluation ev = expected_free_energy(b, model, kStandardC);
            Decision d;
            d.posterior = policy_posterior(ev.G, {0, 0, 0, 0}, gamma_t);
            d.gamma_eff = gamma_t;
            d.xi_hint_eff = 0.0;
            d.q_ctx_volatile = b.ctx[static_cast<int>(Context::kVolatile)];
            d.q_arm_left = b.arm[static_cast<int>(Arm::kLeft)];
            return d;
        }
        case AgentKind::kM3: {
            const auto& p = std::get<M3Params>(spec.params);
            const std::vector<ValueProfile> profiles = m3_profiles(p);
            static const AssignmentMatrix kIdentityZ = AssignmentMatrix::identity(2);
            return decide_from_profiles(profiles, kIdentityZ, state.beliefs(), model);
        }
        case AgentKind::kEpsGreedy: {
            const auto& p = std::get<EpsGreedyParams>(spec.params);
            const auto& q = state.q_values();
            int best = 0;
            for (int a = 1; a < kNumActions; ++a)
                if (q[a] > q[best]) best = a;
            Decision d;
            d.posterior.fill(p.epsilon / kNumActions);
            d.posterior[best] += 1.0 - p.epsilon;
            return d;
        }
        case AgentKind::kSoftmaxQ: {
            const auto& p = std::get<SoftmaxQParams>(spec.params);
            const auto& q = state.q_values();
            std::array<double, kNumActions> logits{};
            for (int a = 0; a < kNumActions; ++a) logits[a] = p.beta * q[a];
            Decision d;
            d.posterior = policy_posterior({0, 0, 0, 0}, logits, 0.0);
            return d;
        }
    }
    throw RuntimeError("agent_decide: unreachable");
}

AgentState agent_step(const AgentSpec& spec, const AgentState& state, Action action,
                      const Observation& obs, const GenerativeModel& model) {
    AgentState next = state;
    if (spec.bayesian()) {
        const FactorizedBeliefs prior = predict(state.beliefs(), action, model);
        next.rep = update(prior, obs, model);
    } else {
        const double alpha = (spec.kind == AgentKind::kEpsGreedy)
                                 ? std::get<EpsGreedyParams>(spec.params).alpha
                                 : std::get<SoftmaxQParams>(spec.params).alpha;
        auto q = state.q_values();
        const int a = static_cast<int>(action);
        q[a] += alpha * (q_reward(obs) - q[a]);
        next.rep = q;
    }
    return next;
}

}  // namespace valprof
