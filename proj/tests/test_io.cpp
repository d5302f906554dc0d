#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "valprof/errors.hpp"
#include "valprof/report.hpp"
#include "valprof/svg.hpp"

using namespace valprof;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Scratch directory under the test working directory, wiped per use.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

FullConfig tiny_full_config() {
    FullConfig cfg;
    cfg.task.n_trials = 100;
    cfg.task.context_block_len = 20;
    cfg.task.volatile_arm_switch_period = 5;
    cfg.generator_names = {"M3"};
    cfg.runs_per_generator = 1;
    cfg.simulate_runs = 1;
    cfg.jobs = 1;
    return cfg;
}

}  // namespace

TEST_CASE("fmt6 keeps six significant digits") {
    CHECK(fmt6(0.5) == "0.5");
    CHECK(fmt6(0.0) == "0");
    CHECK(fmt6(-1.3862943611198906) == "-1.38629");
    CHECK(fmt6(1234567.0) == "1.23457e+06");
}

TEST_CASE("run CSVs have the fixed column layout") {
    TempDir tmp("io_run_csv_tmp");
    const fs::path p = tmp.path / "run.csv";

    TrialRecord bare;
    bare.trial = 3;
    bare.true_context = Context::kStable;
    bare.true_better_arm = Arm::kRight;
    bare.action = Action::kLeft;
    bare.obs.reward = RewardObs::kWin;
    bare.obs.choice_echo = Action::kLeft;
    bare.action_loglik = -0.25;

    TrialRecord full = bare;
    full.q_ctx_volatile = 0.25;
    full.q_arm_left = 0.75;
    full.w0 = 0.9;
    full.w1 = 0.1;
    full.gamma_eff = 2.5;
    full.xi_hint_eff = 1.75;

    write_run_csv(p.string(), 7, {bare, full});

    std::ifstream in(p);
    std::string header, row0, row1;
    std::getline(in, header);
    std::getline(in, row0);
    std::getline(in, row1);
    CHECK(header ==
          "run_id, trial, true_context, true_better_arm, action, obs_hint, obs_reward, "
          "obs_choice, q_ctx_volatile, q_arm_left, w0, w1, gamma_eff, xi_hint_eff, "
          "action_loglik");
    CHECK(row0 == "7,3,stable,right,left,null,win,left,,,,,,,-0.25");
    CHECK(row1 == "7,3,stable,right,left,null,win,left,0.25,0.75,0.9,0.1,2.5,1.75,-0.25");
}

TEST_CASE("recovery outputs land in the documented layout") {
    TempDir tmp("io_recovery_tmp");
    const FullConfig full = tiny_full_config();
    const RecoveryResult result = run_recovery(full.experiment());
    write_recovery_outputs(tmp.path.string(), full, result);

    CHECK(fs::exists(tmp.path / "resolved_config.cfg"));
    CHECK(first_line(tmp.path / "aic_confusion.csv") ==
          "generator,fit_M1_mean,fit_M1_se,fit_M2_mean,fit_M2_se,fit_M3_mean,fit_M3_se");
    CHECK(first_line(tmp.path / "ll_confusion.csv") ==
          "generator,fit_M1_mean,fit_M1_se,fit_M2_mean,fit_M2_se,fit_M3_mean,fit_M3_se");
    CHECK(contains(slurp(tmp.path / "winners.txt"), "*"));
    CHECK(first_line(tmp.path / "param_recovery.csv") ==
          "run,fold,gamma0,gamma1,hint_scale,arm_scale,xi_hint0_eff,xi_hint1_eff");
    // One M3 generator run: header plus five fold rows.
    {
        std::ifstream in(tmp.path / "param_recovery.csv");
        int lines = 0;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) ++lines;
        CHECK(lines == 6);
    }
    for (const char* kind : {"M1", "M2", "M3"})
        CHECK(fs::exists(tmp.path / "fits" /
                         ("fit_M3_run0_" + std::string(kind) + ".json")));

    // The written config parses back to the same experiment.
    const FullConfig reread =
        load_config((tmp.path / "resolved_config.cfg").string());
    CHECK(reread.task.n_trials == 100);
    CHECK(reread.generator_names == std::vector<std::string>{"M3"});

    // Fold-0 parameters survive the on-disk rounding.
    const AgentSpec spec =
        load_fitted_spec(tmp.path.string(), "M3", 0, AgentKind::kM3);
    const std::vector<double> want =
        result.runs[0].fits[2].folds[0].best.params_tuple();
    const std::vector<double> got = spec.params_tuple();
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));

    CHECK_THROWS_WITH_AS(
        load_fitted_spec(tmp.path.string(), "M3", 9, AgentKind::kM1),
        doctest::Contains("missing fit file"), RuntimeError);

    {
        std::ofstream bad(tmp.path / "fits" / "fit_M3_run9_M1.json");
        bad << "{ not json";
    }
    CHECK_THROWS_WITH_AS(
        load_fitted_spec(tmp.path.string(), "M3", 9, AgentKind::kM1),
        doctest::Contains("malformed fit file"), RuntimeError);

    // The analyze stage runs off the same directory.
    TempDir figs("io_figs_tmp");
    run_analysis(tmp.path.string(), figs.path.string());
    for (const char* name : {"panel_a", "panel_b", "panel_c", "panel_d", "panel_e",
                             "panel_f"}) {
        CHECK(fs::exists(figs.path / (std::string(name) + ".csv")));
        CHECK(fs::exists(figs.path / (std::string(name) + ".svg")));
    }
    CHECK(first_line(figs.path / "panel_a.csv") ==
          "offset,mean_w0,se_w0,mean_w1,se_w1,n_events");
    CHECK(first_line(figs.path / "panel_c.csv") ==
          "model,offset,mean_gamma,se_gamma,n_events");
    CHECK(first_line(figs.path / "panel_f_stats.csv") ==
          "reversal_mean_abs_dw0,baseline_mean_abs_dw0,effect,ci_lo,ci_hi,n_sims");
    CHECK(contains(slurp(figs.path / "panel_a.svg"), "<svg"));
}

TEST_CASE("analysis without recovery outputs fails loudly") {
    TempDir tmp("io_empty_tmp");
    CHECK_THROWS_WITH_AS(run_analysis(tmp.path.string(), tmp.path.string()),
                         doctest::Contains("missing"), RuntimeError);
}

TEST_CASE("SVG output escapes markup in labels") {
    svg::LinePlot plot;
    plot.title = "a <&> b";
    plot.xlabel = "x";
    plot.ylabel = "y";
    plot.series = {{"s<1>", {0.0, 1.0}, {0.0, 1.0}, "#123456", {}, {}}};
    const std::string body = plot.render();
    CHECK(contains(body, "<svg"));
    CHECK(contains(body, "a &lt;&amp;&gt; b"));
    CHECK(contains(body, "s&lt;1&gt;"));

    svg::BarPlot bars;
    bars.title = "bars <3";
    bars.ylabel = "v";
    bars.series_labels = {"m&m"};
    bars.series_colors = {"#654321"};
    bars.groups = {{"g", {1.0}}, {"h", {2.0}}};
    const std::string bar_body = bars.render();
    CHECK(contains(bar_body, "<svg"));
    CHECK(contains(bar_body, "bars &lt;3"));
    CHECK(contains(bar_body, "m&amp;m"));
}
