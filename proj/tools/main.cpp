// Command-line front end: simulate agents, run the model-recovery
// experiment, and produce the mechanism-analysis panels.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "valprof/report.hpp"

namespace fs = std::filesystem;
using namespace valprof;

namespace {

FullConfig load_or_default(const std::string& config_path) {
    if (config_path.empty()) return FullConfig{};
    return load_config(config_path);
}

void print_warnings(const TaskConfig& task) {
    for (const std::string& w : task.validate()) std::cerr << "warning: " << w << "\n";
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const FullConfig config = load_or_default(config_path);
    print_warnings(config.task);
    const AgentSpec spec = config.agent_by_name(config.simulate_generator);
    const GenerativeModel model = build_model(config.task, config.hyper);

    fs::create_directories(out_dir);
    for (int r = 0; r < config.simulate_runs; ++r) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
        const SimResult sim = simulate_run(spec, config.task, model, seed);
        std::ostringstream name;
        name << "run_" << config.simulate_generator << "_" << r << ".csv";
        write_run_csv((fs::path(out_dir) / name.str()).string(), r, sim.records);
    }
    std::cout << "wrote " << config.simulate_runs << " run CSVs ("
              << config.simulate_generator << ") to " << out_dir << "\n";
    return 0;
}

int cmd_recover(const std::string& config_path, const std::string& out_dir, int jobs) {
    FullConfig config = load_or_default(config_path);
    print_warnings(config.task);
    if (jobs >= 0) config.jobs = jobs;

    ExperimentConfig exp = config.experiment();
    const RecoveryResult result = run_recovery(exp);
    write_recovery_outputs(out_dir, config, result);

    for (const RowWinner& rw : summarize_winners(result.aic, /*minimize=*/true)) {
        std::cout << "AIC winner for " << rw.generator << " data: " << to_string(rw.winner)
                  << " (margin " << fmt6(rw.margin) << (rw.tie ? ", tie" : "") << ")\n";
    }
    std::cout << "wrote recovery tables to " << out_dir << "\n";
    return 0;
}

int cmd_analyze(const std::string& fit_dir, const std::string& out_dir) {
    run_analysis(fit_dir, out_dir);
    std::cout << "wrote analysis panels to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Value-profile active inference agents in a volatile bandit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string fit_dir;
    int jobs = -1;

    CLI::App* sim = app.add_subcommand("simulate", "simulate closed-loop runs, one CSV each");
    sim->add_option("--config", config_path, "configuration file");
    sim->add_option("--out", out_dir, "output directory");

    CLI::App* rec = app.add_subcommand("recover", "run the model-recovery experiment");
    rec->add_option("--config", config_path, "configuration file");
    rec->add_option("--out", out_dir, "output directory");
    rec->add_option("--jobs", jobs, "worker threads (0 = hardware concurrency)");

    CLI::App* ana = app.add_subcommand("analyze", "mechanism panels from fitted models");
    ana->add_option("--fits", fit_dir, "directory written by recover")->required();
    ana->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(config_path, out_dir);
        if (rec->parsed()) return cmd_recover(config_path, out_dir, jobs);
        if (ana->parsed()) return cmd_analyze(fit_dir, out_dir);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
