#include "valprof/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "valprof/errors.hpp"
#include "valprof/fitting.hpp"

namespace valprof {

namespace {

bool is_reversal_of(Context prev, Context cur, ReversalDirection dir) {
    if (prev == cur) return false;
    switch (dir) {
        case ReversalDirection::kVolToStable:
            return prev == Context::kVolatile && cur == Context::kStable;
        case ReversalDirection::kStableToVol:
            return prev == Context::kStable && cur == Context::kVolatile;
        case ReversalDirection::kAny:
            return true;
    }
    return false;
}

template <typename Get>
void pool_aligned(const std::vector<std::vector<TrialRecord>>& runs,
                  const std::vector<int>& reversals, int pre, int post,
                  const Get& get, std::vector<std::vector<double>>& samples) {
    samples.assign(pre + post + 1, {});
    for (const auto& run : runs) {
        const int n = static_cast<int>(run.size());
        for (int r : reversals)
            for (int off = -pre; off <= post; ++off) {
                const int t = r + off;
                if (t < 0 || t >= n) continue;
                samples[off + pre].push_back(get(run[t]));
            }
    }
}

}  // namespace

std::vector<int> reversal_trials(const TaskConfig& task, ReversalDirection dir) {
    std::vector<int> out;
    for (int t = task.context_block_len; t < task.n_trials; t += task.context_block_len) {
        const int block = t / task.context_block_len;
        const Context prev = (block - 1) % 2 == 0 ? Context::kVolatile : Context::kStable;
        const Context cur = block % 2 == 0 ? Context::kVolatile : Context::kStable;
        if (is_reversal_of(prev, cur, dir)) out.push_back(t);
    }
    return out;
}

AlignedWeightSeries align_to_reversals(const std::vector<std::vector<TrialRecord>>& runs,
                                       const TaskConfig& task, ReversalDirection dir,
                                       int pre, int post) {
    for (const auto& run : runs)
        for (const TrialRecord& rec : run)
            if (!rec.w0 || !rec.w1)
                throw RuntimeError(
                    "align_to_reversals: records carry no profile weights (not an M3 run)");

    const std::vector<int> reversals = reversal_trials(task, dir);
    AlignedWeightSeries out;
    if (reversals.empty()) return out;  // no events of this direction

    std::vector<std::vector<double>> w0s, w1s;
    pool_aligned(runs, reversals, pre, post, [](const TrialRecord& r) { return *r.w0; }, w0s);
    pool_aligned(runs, reversals, pre, post, [](const TrialRecord& r) { return *r.w1; }, w1s);

    for (int off = -pre; off <= post; ++off) {
        const auto& xs0 = w0s[off + pre];
        if (xs0.empty()) continue;  // offset entirely outside every run
        out.offsets.push_back(off);
        out.mean_w0.push_back(mean(xs0));
        out.se_w0.push_back(standard_error(xs0));
        out.mean_w1.push_back(mean(w1s[off + pre]));
        out.se_w1.push_back(standard_error(w1s[off + pre]));
        out.n_events.push_back(static_cast<int>(xs0.size()));
    }
    return out;
}

AlignedGammaSeries reversal_aligned_gamma(const std::vector<std::vector<TrialRecord>>& runs,
                                          const TaskConfig& task, ReversalDirection dir,
                                          int pre, int post) {
    for (const auto& run : runs)
        for (const TrialRecord& rec : run)
            if (!rec.gamma_eff)
                throw RuntimeError(
                    "reversal_aligned_gamma: records carry no effective precision");

    const std::vector<int> reversals = reversal_trials(task, dir);
    AlignedGammaSeries out;
    if (reversals.empty()) return out;

    std::vector<std::vector<double>> gs;
    pool_aligned(runs, reversals, pre, post,
                 [](const TrialRecord& r) { return *r.gamma_eff; }, gs);
    for (int off = -pre; off <= post; ++off) {
        const auto& xs = gs[off + pre];
        if (xs.empty()) continue;
        out.offsets.push_back(off);
        out.mean_gamma.push_back(mean(xs));
        out.se_gamma.push_back(standard_error(xs));
        out.n_events.push_back(static_cast<int>(xs.size()));
    }
    return out;
}

ContextStats context_conditional_stats(const std::vector<std::vector<TrialRecord>>& runs) {
    ContextStats st;
    std::vector<double> g_vol, g_stab;
    int hint_vol = 0, hint_stab = 0;
    for (const auto& run : runs)
        for (const TrialRecord& rec : run) {
            const bool vol = rec.true_context == Context::kVolatile;
            (vol ? st.n_volatile : st.n_stable)++;
            if (rec.action == Action::kHint) (vol ? hint_vol : hint_stab)++;
            if (rec.gamma_eff) (vol ? g_vol : g_stab).push_back(*rec.gamma_eff);
        }
    st.gamma_volatile = g_vol.empty() ? std::nan("") : mean(g_vol);
    st.gamma_stable = g_stab.empty() ? std::nan("") : mean(g_stab);
    st.hint_rate_volatile =
        st.n_volatile > 0 ? static_cast<double>(hint_vol) / st.n_volatile : 0.0;
    st.hint_rate_stable =
        st.n_stable > 0 ? static_cast<double>(hint_stab) / st.n_stable : 0.0;
    return st;
}

StabilityResult profile_stability(const AgentSpec& spec, const TaskConfig& base_task,
                                  const ModelHyperParams& hyper, int n_sims, int n_trials,
                                  std::uint64_t seed) {
    if (spec.kind != AgentKind::kM3)
        throw ConfigError("profile_stability: requires an M3 agent");
    if (n_sims <= 0 || n_trials <= 0)
        throw ConfigError("profile_stability: n_sims and n_trials must be positive");

    // Pure volatile: one context block spanning the whole run, micro
    // reversals on the usual period. The agent's model keeps the base task's
    // observation statistics.
    TaskConfig task = base_task;
    task.n_trials = n_trials;
    task.context_block_len = n_trials;
    const GenerativeModel model = build_model(task, hyper);

    StabilityResult out;
    out.n_sims = n_sims;
    out.mean_w0.assign(n_trials, 0.0);
    out.mean_w1.assign(n_trials, 0.0);
    out.is_micro_reversal.assign(n_trials, 0);
    for (int t = task.volatile_arm_switch_period; t < n_trials;
         t += task.volatile_arm_switch_period)
        out.is_micro_reversal[t] = 1;

    std::vector<double> rev_dw, base_dw;
    for (int s = 0; s < n_sims; ++s) {
        const SimResult sim =
            simulate_run(spec, task, model, derive_stream(seed, 0x575ULL + s));
        for (int t = 0; t < n_trials; ++t) {
            out.mean_w0[t] += *sim.records[t].w0 / n_sims;
            out.mean_w1[t] += *sim.records[t].w1 / n_sims;
            if (t == 0) continue;
            const double dw = std::abs(*sim.records[t].w0 - *sim.records[t - 1].w0);
            (out.is_micro_reversal[t] ? rev_dw : base_dw).push_back(dw);
        }
    }

    out.reversal_mean_abs_dw0 = mean(rev_dw);
    out.baseline_mean_abs_dw0 = mean(base_dw);
    out.effect = out.reversal_mean_abs_dw0 - out.baseline_mean_abs_dw0;

    // Seeded percentile bootstrap over both groups.
    const int kResamples = 2000;
    RngStream rng(derive_stream(seed, stream_tag::kAnalysis));
    std::vector<double> diffs;
    diffs.reserve(kResamples);
    auto resample_mean = [&](const std::vector<double>& xs) {
        double s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            s += xs[static_cast<std::size_t>(rng.uniform() * xs.size())];
        return s / static_cast<double>(xs.size());
    };
    for (int b = 0; b < kResamples; ++b)
        diffs.push_back(resample_mean(rev_dw) - resample_mean(base_dw));
    std::sort(diffs.begin(), diffs.end());
    out.ci_lo = diffs[static_cast<std::size_t>(0.025 * (kResamples - 1))];
    out.ci_hi = diffs[static_cast<std::size_t>(0.975 * (kResamples - 1))];
    return out;
}

}  // namespace valprof
