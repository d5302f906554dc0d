#include "valprof/fitting.hpp"

#include <cmath>

#include "valprof/errors.hpp"

namespace valprof {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double standard_error(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return sample_sd(xs) / std::sqrt(static_cast<double>(xs.size()));
}

namespace {

bool masked(const TrialMask& mask, std::size_t t) {
    return mask.empty() || mask[t] != 0;
}

void check_mask(const TrialMask& mask, std::size_t n, const char* where) {
    if (!mask.empty() && mask.size() != n)
        throw ConfigError(std::string(where) + ": mask length does not match trials");
}

// Belief step shared by replay paths: filter through (action, obs); on
// degenerate evidence fall back to the predictive prior so the replay can
// continue past an impossible observation.
FactorizedBeliefs replay_belief_step(const FactorizedBeliefs& beliefs, Action action,
                                     const Observation& obs, const GenerativeModel& model,
                                     bool* degenerate) {
    const FactorizedBeliefs prior = predict(beliefs, action, model);
    try {
        return update(prior, obs, model);
    } catch (const DegenerateEvidenceError&) {
        if (degenerate) *degenerate = true;
        return prior;
    }
}

}  // namespace

SequenceLoglik sequence_loglik(const AgentSpec& spec, const TrialSeq& trials,
                               const GenerativeModel& model, const TrialMask& mask) {
    spec.validate();
    check_mask(mask, trials.size(), "sequence_loglik");

    AgentState state = agent_init(spec, model);
    SequenceLoglik out;
    for (std::size_t t = 0; t < trials.size(); ++t) {
        const auto& [action, obs] = trials[t];
        if (masked(mask, t)) {
            const Decision d = agent_decide(spec, state, model);
            bool floored = false;
            out.loglik += action_loglik(d.posterior, action, &floored);
            if (floored) ++out.flagged_trials;
        }
        if (spec.bayesian()) {
            bool degenerate = false;
            AgentState next = state;
            next.rep = replay_belief_step(state.beliefs(), action, obs, model, &degenerate);
            if (degenerate) ++out.flagged_trials;
            state = next;
        } else {
            state = agent_step(spec, state, action, obs, model);
        }
    }
    return out;
}

ReplayTrajectory ReplayTrajectory::build(const TrialSeq& trials,
                                         const GenerativeModel& model) {
    ReplayTrajectory traj;
    const std::size_t n = trials.size();
    traj.G.reserve(n);
    traj.arm_entropy.reserve(n);
    traj.weights.reserve(n);
    traj.actions.reserve(n);

    FactorizedBeliefs b = initial_beliefs(model);
    for (const auto& [action, obs] : trials) {
        const PolicyEvaluation ev = expected_free_energy(b, model, kStandardC);
        traj.G.push_back(ev.G);
        traj.arm_entropy.push_back(entropy(b.arm));
        std::array<double, 2> ctx_pred{};
        for (int to = 0; to < kNumContexts; ++to)
            for (int from = 0; from < kNumContexts; ++from)
                ctx_pred[to] += model.b_ctx[to][from] * b.ctx[from];
        traj.weights.push_back(ctx_pred);  // identity assignment: w == ctx_pred
        traj.actions.push_back(static_cast<int>(action));
        b = replay_belief_step(b, action, obs, model, nullptr);
    }
    return traj;
}

double candidate_loglik(const AgentSpec& spec, const ReplayTrajectory& traj,
                        const TrialMask& mask) {
    check_mask(mask, traj.actions.size(), "candidate_loglik");
    const std::array<double, kNumActions> zero_xi{0, 0, 0, 0};

    double ll = 0.0;
    switch (spec.kind) {
        case AgentKind::kM1: {
            const double gamma = std::get<M1Params>(spec.params).gamma;
            for (std::size_t t = 0; t < traj.actions.size(); ++t) {
                if (!masked(mask, t)) continue;
                const auto post = policy_posterior(traj.G[t], zero_xi, gamma);
                ll += action_loglik(post, static_cast<Action>(traj.actions[t]));
            }
            break;
        }
        case AgentKind::kM2: {
            const auto& p = std::get<M2Params>(spec.params);
            for (std::size_t t = 0; t < traj.actions.size(); ++t) {
                if (!masked(mask, t)) continue;
                const double gamma_t = p.gamma_base / (1.0 + p.kappa * traj.arm_entropy[t]);
                const auto post = policy_posterior(traj.G[t], zero_xi, gamma_t);
                ll += action_loglik(post, static_cast<Action>(traj.actions[t]));
            }
            break;
        }
        case AgentKind::kM3: {
            const auto& p = std::get<M3Params>(spec.params);
            const double hint0 = kM3HintBase0 * p.hint_scale;
            const double hint1 = kM3HintBase1 * p.hint_scale;
            for (std::size_t t = 0; t < traj.actions.size(); ++t) {
                if (!masked(mask, t)) continue;
                const auto& w = traj.weights[t];
                const double gamma_t = w[0] * p.gamma0 + w[1] * p.gamma1;
                const std::array<double, kNumActions> xi{
                    0.0, w[0] * hint0 + w[1] * hint1, 0.0, 0.0};
                const auto post = policy_posterior(traj.G[t], xi, gamma_t);
                ll += action_loglik(post, static_cast<Action>(traj.actions[t]));
            }
            break;
        }
        default:
            throw ConfigError("candidate_loglik: only Bayesian kinds are searchable");
    }
    return ll;
}

namespace {

const std::vector<double> kM1Coarse{0.5, 1.0, 1.5, 2.5, 4.0, 8.0, 12.0, 16.0};
const std::vector<double> kM2GammaCoarse{0.5, 1.0, 1.5, 2.5, 4.0, 8.0};
const std::vector<double> kM2KappaCoarse{0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0};
const std::vector<double> kM3Gamma{1.0, 2.5, 5.0};
const std::vector<double> kM3HintScale{0.5, 1.0, 2.0, 4.0};
const std::vector<double> kM3ArmScale{0.5, 1.0, 2.0};

std::vector<double> linspace(double lo, double hi, int k) {
    std::vector<double> xs(k);
    for (int i = 0; i < k; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1);
    return xs;
}

// Interval spanned by the coarse neighbours of the best index, clamped at
// the grid ends.
std::pair<double, double> neighbour_interval(const std::vector<double>& grid,
                                             std::size_t best) {
    const std::size_t lo = best == 0 ? 0 : best - 1;
    const std::size_t hi = best + 1 < grid.size() ? best + 1 : best;
    return {grid[lo], grid[hi]};
}

struct Selector {
    bool has = false;
    double best_ll = 0.0;
    AgentSpec best;
    std::vector<double> best_tuple;

    // Exact log-likelihood ties go to the lexicographically smallest
    // parameter tuple regardless of evaluation order.
    void offer(const AgentSpec& spec, double ll) {
        const std::vector<double> tuple = spec.params_tuple();
        if (!has || ll > best_ll || (ll == best_ll && tuple < best_tuple)) {
            has = true;
            best_ll = ll;
            best = spec;
            best_tuple = tuple;
        }
    }
};

}  // namespace

GridSearchResult grid_search(AgentKind kind, const ReplayTrajectory& traj,
                             const TrialMask& train_mask) {
    GridSearchResult result;
    Selector sel;
    auto eval = [&](const AgentSpec& spec) {
        const double ll = candidate_loglik(spec, traj, train_mask);
        result.trace.push_back({spec, ll});
        sel.offer(spec, ll);
    };

    switch (kind) {
        case AgentKind::kM1: {
            Selector coarse_sel;
            std::size_t best_idx = 0;
            for (std::size_t i = 0; i < kM1Coarse.size(); ++i) {
                const AgentSpec spec = AgentSpec::m1({kM1Coarse[i]});
                eval(spec);
                const double ll = result.trace.back().train_ll;
                if (!coarse_sel.has || ll > coarse_sel.best_ll) best_idx = i;
                coarse_sel.offer(spec, ll);
            }
            const auto [lo, hi] = neighbour_interval(kM1Coarse, best_idx);
            for (double g : linspace(lo, hi, 7)) eval(AgentSpec::m1({g}));
            break;
        }
        case AgentKind::kM2: {
            Selector coarse_sel;
            std::size_t best_g = 0, best_k = 0;
            for (std::size_t gi = 0; gi < kM2GammaCoarse.size(); ++gi)
                for (std::size_t ki = 0; ki < kM2KappaCoarse.size(); ++ki) {
                    const AgentSpec spec =
                        AgentSpec::m2({kM2GammaCoarse[gi], kM2KappaCoarse[ki]});
                    eval(spec);
                    const double ll = result.trace.back().train_ll;
                    if (!coarse_sel.has || ll > coarse_sel.best_ll) {
                        best_g = gi;
                        best_k = ki;
                    }
                    coarse_sel.offer(spec, ll);
                }
            const auto [glo, ghi] = neighbour_interval(kM2GammaCoarse, best_g);
            const auto [klo, khi] = neighbour_interval(kM2KappaCoarse, best_k);
            for (double g : linspace(glo, ghi, 6))
                for (double k : linspace(klo, khi, 6)) eval(AgentSpec::m2({g, k}));
            break;
        }
        case AgentKind::kM3: {
            for (double g0 : kM3Gamma)
                for (double g1 : kM3Gamma)
                    for (double hs : kM3HintScale)
                        for (double as : kM3ArmScale)
                            eval(AgentSpec::m3({g0, g1, hs, as}));
            break;
        }
        default:
            throw ConfigError("grid_search: only Bayesian kinds are searchable");
    }

    result.best = sel.best;
    result.best_train_ll = sel.best_ll;
    return result;
}

FitResult cross_validate(AgentKind kind, const TrialSeq& trials,
                         const GenerativeModel& model) {
    const int n = static_cast<int>(trials.size());
    if (n == 0) throw ConfigError("cross_validate: empty trial sequence");
    if (n % kNumFolds != 0)
        throw ConfigError("cross_validate: n_trials must be divisible by the fold count");
    const int fold_len = n / kNumFolds;

    const ReplayTrajectory traj = ReplayTrajectory::build(trials, model);

    FitResult fit;
    fit.kind = kind;
    std::vector<double> test_lls;
    for (int f = 0; f < kNumFolds; ++f) {
        TrialMask train(n, 1), test(n, 0);
        for (int t = f * fold_len; t < (f + 1) * fold_len; ++t) {
            train[t] = 0;
            test[t] = 1;
        }
        const GridSearchResult gs = grid_search(kind, traj, train);
        FoldFit ff;
        ff.fold = f;
        ff.best = gs.best;
        ff.train_ll = gs.best_train_ll;
        ff.test_ll = candidate_loglik(gs.best, traj, test);
        test_lls.push_back(ff.test_ll);
        fit.folds.push_back(ff);
    }

    fit.mean_test_ll = mean(test_lls);
    fit.se_test_ll = standard_error(test_lls);
    const double p = AgentSpec{kind, {}}.free_param_count();
    fit.aic = 2.0 * p - 2.0 * fit.mean_test_ll;
    fit.bic = p * std::log(static_cast<double>(fold_len)) - 2.0 * fit.mean_test_ll;
    return fit;
}

}  // namespace valprof
