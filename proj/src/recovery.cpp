#include "valprof/recovery.hpp"

#include <atomic>
#include <thread>

#include "valprof/errors.hpp"

namespace valprof {

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig c;
    c.generators = {AgentSpec::m1(), AgentSpec::m2(), AgentSpec::m3(),
                    AgentSpec::eps_greedy(), AgentSpec::softmax_q()};
    return c;
}

void ExperimentConfig::validate() const {
    task.validate();
    if (generators.empty()) throw ConfigError("experiment: no generators");
    for (const AgentSpec& g : generators) g.validate();
    if (runs_per_generator <= 0)
        throw ConfigError("experiment: runs_per_generator must be positive");
    if (jobs < 0) throw ConfigError("experiment: jobs must be >= 0");
    if (task.n_trials % kNumFolds != 0)
        throw ConfigError("experiment: n_trials must be divisible by the fold count");
}

std::uint64_t run_seed_for(const ExperimentConfig& config, int run_index) {
    return config.base_seed + static_cast<std::uint64_t>(run_index);
}

RecoveryResult run_recovery(const ExperimentConfig& config) {
    config.validate();
    const GenerativeModel model = build_model(config.task, config.hyper);

    const std::size_t n_gen = config.generators.size();
    const std::size_t n_jobs =
        n_gen * static_cast<std::size_t>(config.runs_per_generator);

    RecoveryResult result;
    result.config = config;
    result.runs.resize(n_jobs);

    // One job = simulate one run and fit every candidate kind to it. Jobs are
    // written to preassigned slots, so aggregation below is independent of
    // scheduling order.
    auto run_job = [&](std::size_t j) {
        const std::size_t gen_idx = j / config.runs_per_generator;
        const int run_idx = static_cast<int>(j % config.runs_per_generator);
        const AgentSpec& gen = config.generators[gen_idx];
        const std::uint64_t seed = run_seed_for(config, run_idx);

        const SimResult sim = simulate_run(gen, config.task, model, seed);

        RunFits rf;
        rf.generator = to_string(gen.kind);
        rf.run_index = run_idx;
        rf.run_seed = seed;
        for (AgentKind fitted : kFittedKinds)
            rf.fits.push_back(cross_validate(fitted, sim.data.trials, model));
        result.runs[j] = std::move(rf);
    };

    unsigned workers = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                       : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_jobs));

    if (workers <= 1) {
        for (std::size_t j = 0; j < n_jobs; ++j) run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < n_jobs; j = next.fetch_add(1))
                    run_job(j);
            });
        for (std::thread& t : pool) t.join();
    }

    // Aggregate per-run AIC / mean held-out log-likelihood across runs.
    const std::size_t n_fit = kFittedKinds.size();
    result.aic.cells.resize(n_gen * n_fit);
    result.loglik.cells.resize(n_gen * n_fit);
    for (std::size_t g = 0; g < n_gen; ++g) {
        result.aic.generator_names.push_back(to_string(config.generators[g].kind));
        result.loglik.generator_names.push_back(to_string(config.generators[g].kind));
        for (std::size_t f = 0; f < n_fit; ++f) {
            std::vector<double> aics, lls;
            for (int r = 0; r < config.runs_per_generator; ++r) {
                const RunFits& rf = result.runs[g * config.runs_per_generator + r];
                aics.push_back(rf.fits[f].aic);
                lls.push_back(rf.fits[f].mean_test_ll);
            }
            result.aic.cells[g * n_fit + f] = {mean(aics), standard_error(aics)};
            result.loglik.cells[g * n_fit + f] = {mean(lls), standard_error(lls)};
        }
    }
    return result;
}

std::vector<RowWinner> summarize_winners(const ConfusionMatrix& m, bool minimize) {
    const std::size_t n_fit = kFittedKinds.size();
    std::vector<RowWinner> rows;
    for (std::size_t g = 0; g < m.generator_names.size(); ++g) {
        RowWinner rw;
        rw.generator = m.generator_names[g];
        std::size_t best = 0;
        bool tie = false;
        for (std::size_t f = 1; f < n_fit; ++f) {
            const double v = m.at(g, f).mean;
            const double b = m.at(g, best).mean;
            if (v == b) tie = true;
            if (minimize ? v < b : v > b) {
                best = f;
                tie = false;
            }
        }
        double runner_up = 0.0;
        bool have_runner = false;
        for (std::size_t f = 0; f < n_fit; ++f) {
            if (f == best) continue;
            const double v = m.at(g, f).mean;
            if (!have_runner || (minimize ? v < runner_up : v > runner_up)) {
                runner_up = v;
                have_runner = true;
            }
        }
        rw.winner = kFittedKinds[best];
        rw.margin = have_runner ? std::abs(runner_up - m.at(g, best).mean) : 0.0;
        rw.tie = tie;
        rows.push_back(rw);
    }
    return rows;
}

}  // namespace valprof
