#include "valprof/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "valprof/errors.hpp"
#include "valprof/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace valprof {

std::string fmt6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

namespace {

std::string fmt_opt(const std::optional<double>& x) {
    return x ? fmt6(*x) : std::string{};
}

// Round-trips a double through the 6-significant-digit output format so the
// JSON files carry exactly the printed values.
double round6(double x) { return std::stod(fmt6(x)); }

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw RuntimeError("cannot write file: " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out.good()) throw RuntimeError("failed writing file: " + path.string());
}

json params_json(const AgentSpec& spec) {
    json j;
    switch (spec.kind) {
        case AgentKind::kM1:
            j["gamma"] = round6(std::get<M1Params>(spec.params).gamma);
            break;
        case AgentKind::kM2: {
            const auto& p = std::get<M2Params>(spec.params);
            j["gamma_base"] = round6(p.gamma_base);
            j["kappa"] = round6(p.kappa);
            break;
        }
        case AgentKind::kM3: {
            const auto& p = std::get<M3Params>(spec.params);
            j["gamma0"] = round6(p.gamma0);
            j["gamma1"] = round6(p.gamma1);
            j["hint_scale"] = round6(p.hint_scale);
            j["arm_scale"] = round6(p.arm_scale);
            break;
        }
        case AgentKind::kEpsGreedy: {
            const auto& p = std::get<EpsGreedyParams>(spec.params);
            j["epsilon"] = round6(p.epsilon);
            j["alpha"] = round6(p.alpha);
            break;
        }
        case AgentKind::kSoftmaxQ: {
            const auto& p = std::get<SoftmaxQParams>(spec.params);
            j["beta"] = round6(p.beta);
            j["alpha"] = round6(p.alpha);
            break;
        }
    }
    return j;
}

AgentSpec spec_from_params_json(AgentKind kind, const json& j) {
    switch (kind) {
        case AgentKind::kM1:
            return AgentSpec::m1({j.at("gamma").get<double>()});
        case AgentKind::kM2:
            return AgentSpec::m2(
                {j.at("gamma_base").get<double>(), j.at("kappa").get<double>()});
        case AgentKind::kM3:
            return AgentSpec::m3({j.at("gamma0").get<double>(), j.at("gamma1").get<double>(),
                                  j.at("hint_scale").get<double>(),
                                  j.at("arm_scale").get<double>()});
        case AgentKind::kEpsGreedy:
            return AgentSpec::eps_greedy(
                {j.at("epsilon").get<double>(), j.at("alpha").get<double>()});
        case AgentKind::kSoftmaxQ:
            return AgentSpec::softmax_q(
                {j.at("beta").get<double>(), j.at("alpha").get<double>()});
    }
    throw RuntimeError("spec_from_params_json: bad kind");
}

std::string fit_file_name(const std::string& gen, int run, AgentKind fitted) {
    std::ostringstream name;
    name << "fit_" << gen << "_run" << run << "_" << to_string(fitted) << ".json";
    return name.str();
}

void write_confusion_csv(const fs::path& path, const ConfusionMatrix& m) {
    std::ofstream out = open_out(path);
    out << "generator";
    for (AgentKind k : kFittedKinds)
        out << ",fit_" << to_string(k) << "_mean,fit_" << to_string(k) << "_se";
    out << "\n";
    for (std::size_t g = 0; g < m.generator_names.size(); ++g) {
        out << m.generator_names[g];
        for (std::size_t f = 0; f < kFittedKinds.size(); ++f)
            out << "," << fmt6(m.at(g, f).mean) << "," << fmt6(m.at(g, f).se);
        out << "\n";
    }
    finish(out, path);
}

void write_winners_table(std::ofstream& out, const ConfusionMatrix& m, bool minimize,
                         const char* heading) {
    const std::vector<RowWinner> winners = summarize_winners(m, minimize);
    out << heading << "\n";
    out << "generator";
    for (AgentKind k : kFittedKinds) out << "\t" << to_string(k);
    out << "\n";
    for (std::size_t g = 0; g < m.generator_names.size(); ++g) {
        out << m.generator_names[g];
        for (std::size_t f = 0; f < kFittedKinds.size(); ++f) {
            const bool win = kFittedKinds[f] == winners[g].winner;
            out << "\t" << (win ? "*" : "") << fmt6(m.at(g, f).mean) << " +/- "
                << fmt6(m.at(g, f).se);
        }
        if (winners[g].tie) out << "\t(tie: lower index kept)";
        out << "\n";
    }
    out << "\n";
}

}  // namespace

void write_run_csv(const std::string& path, int run_id,
                   const std::vector<TrialRecord>& records) {
    const fs::path p(path);
    std::ofstream out = open_out(p);
    out << "run_id, trial, true_context, true_better_arm, action, obs_hint, obs_reward, "
           "obs_choice, q_ctx_volatile, q_arm_left, w0, w1, gamma_eff, xi_hint_eff, "
           "action_loglik\n";
    for (const TrialRecord& r : records) {
        out << run_id << "," << r.trial << "," << to_string(r.true_context) << ","
            << to_string(r.true_better_arm) << "," << to_string(r.action) << ","
            << to_string(r.obs.hint) << "," << to_string(r.obs.reward) << ","
            << to_string(r.obs.choice_echo) << "," << fmt_opt(r.q_ctx_volatile) << ","
            << fmt_opt(r.q_arm_left) << "," << fmt_opt(r.w0) << "," << fmt_opt(r.w1) << ","
            << fmt_opt(r.gamma_eff) << "," << fmt_opt(r.xi_hint_eff) << ","
            << fmt6(r.action_loglik) << "\n";
    }
    finish(out, p);
}

void write_recovery_outputs(const std::string& out_dir, const FullConfig& config,
                            const RecoveryResult& result) {
    const fs::path dir(out_dir);
    fs::create_directories(dir / "fits");

    save_config(config, (dir / "resolved_config.cfg").string());
    write_confusion_csv(dir / "aic_confusion.csv", result.aic);
    write_confusion_csv(dir / "ll_confusion.csv", result.loglik);

    {
        std::ofstream out = open_out(dir / "winners.txt");
        write_winners_table(out, result.aic,
                            /*minimize=*/true, "AIC, mean +/- SE over runs (* = winner, lower is better)");
        write_winners_table(out, result.loglik, /*minimize=*/false,
                            "Held-out log-likelihood, mean +/- SE over runs (* = winner, higher is better)");
        finish(out, dir / "winners.txt");
    }

    // Per-fold recovered M3 parameters on M3-generated runs, with the
    // raw-gauge effective hint logits the scales imply.
    {
        const fs::path p = dir / "param_recovery.csv";
        std::ofstream out = open_out(p);
        out << "run,fold,gamma0,gamma1,hint_scale,arm_scale,xi_hint0_eff,xi_hint1_eff\n";
        const std::size_t m3_col = 2;  // kFittedKinds order: M1, M2, M3
        for (const RunFits& rf : result.runs) {
            if (rf.generator != "M3") continue;
            for (const FoldFit& ff : rf.fits[m3_col].folds) {
                const auto& p3 = std::get<M3Params>(ff.best.params);
                out << rf.run_index << "," << ff.fold << "," << fmt6(p3.gamma0) << ","
                    << fmt6(p3.gamma1) << "," << fmt6(p3.hint_scale) << ","
                    << fmt6(p3.arm_scale) << "," << fmt6(kM3HintBase0 * p3.hint_scale) << ","
                    << fmt6(kM3HintBase1 * p3.hint_scale) << "\n";
            }
        }
        finish(out, p);
    }

    for (const RunFits& rf : result.runs) {
        for (std::size_t f = 0; f < rf.fits.size(); ++f) {
            const FitResult& fit = rf.fits[f];
            json j;
            j["generator"] = rf.generator;
            j["run_index"] = rf.run_index;
            j["run_seed"] = rf.run_seed;
            j["fitted_kind"] = to_string(fit.kind);
            j["n_params"] = AgentSpec{fit.kind, {}}.free_param_count();
            j["mean_test_ll"] = round6(fit.mean_test_ll);
            j["se_test_ll"] = round6(fit.se_test_ll);
            j["aic"] = round6(fit.aic);
            j["bic"] = round6(fit.bic);
            json folds = json::array();
            for (const FoldFit& ff : fit.folds) {
                json jf;
                jf["fold"] = ff.fold;
                jf["params"] = params_json(ff.best);
                jf["train_ll"] = round6(ff.train_ll);
                jf["test_ll"] = round6(ff.test_ll);
                folds.push_back(jf);
            }
            j["folds"] = folds;

            const fs::path p = dir / "fits" / fit_file_name(rf.generator, rf.run_index, fit.kind);
            std::ofstream out = open_out(p);
            out << j.dump(2) << "\n";
            finish(out, p);
        }
    }
}

AgentSpec load_fitted_spec(const std::string& fit_dir, const std::string& gen, int run,
                           AgentKind fitted) {
    const fs::path p = fs::path(fit_dir) / "fits" / fit_file_name(gen, run, fitted);
    std::ifstream in(p);
    if (!in)
        throw RuntimeError("missing fit file " + p.string() +
                           " (run the recover command first)");
    json j;
    try {
        in >> j;
        return spec_from_params_json(fitted, j.at("folds").at(0).at("params"));
    } catch (const json::exception& e) {
        throw RuntimeError("malformed fit file " + p.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// cmd_analyze: panels from re-simulated fitted models
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<TrialRecord>> resimulate(const AgentSpec& spec,
                                                 const ExperimentConfig& exp,
                                                 const GenerativeModel& model) {
    std::vector<std::vector<TrialRecord>> runs;
    for (int r = 0; r < exp.runs_per_generator; ++r) {
        SimResult sim = simulate_run(spec, exp.task, model, run_seed_for(exp, r));
        runs.push_back(std::move(sim.records));
    }
    return runs;
}

void write_weight_panel(const fs::path& csv_path, const fs::path& svg_path,
                        const AlignedWeightSeries& s, const std::string& title) {
    std::ofstream out = open_out(csv_path);
    out << "offset,mean_w0,se_w0,mean_w1,se_w1,n_events\n";
    for (std::size_t i = 0; i < s.offsets.size(); ++i)
        out << s.offsets[i] << "," << fmt6(s.mean_w0[i]) << "," << fmt6(s.se_w0[i]) << ","
            << fmt6(s.mean_w1[i]) << "," << fmt6(s.se_w1[i]) << "," << s.n_events[i] << "\n";
    finish(out, csv_path);

    svg::LinePlot plot;
    plot.title = title;
    plot.xlabel = "trials from reversal";
    plot.ylabel = "profile weight";
    svg::Series w0{"w0 (volatile)", {}, {}, "#c0392b", {}, {}};
    svg::Series w1{"w1 (stable)", {}, {}, "#1f6fb2", {}, {}};
    for (std::size_t i = 0; i < s.offsets.size(); ++i) {
        const double x = s.offsets[i];
        w0.x.push_back(x);
        w0.y.push_back(s.mean_w0[i]);
        w0.band_lo.push_back(s.mean_w0[i] - s.se_w0[i]);
        w0.band_hi.push_back(s.mean_w0[i] + s.se_w0[i]);
        w1.x.push_back(x);
        w1.y.push_back(s.mean_w1[i]);
        w1.band_lo.push_back(s.mean_w1[i] - s.se_w1[i]);
        w1.band_hi.push_back(s.mean_w1[i] + s.se_w1[i]);
    }
    plot.series = {w0, w1};
    plot.vlines.push_back({0.0, "#555555", true});
    plot.hlines.push_back({0.5, "#aaaaaa", true});
    plot.write(svg_path.string());
}

const char* kModelColors[3] = {"#7f8c8d", "#8e44ad", "#c0392b"};

}  // namespace

void run_analysis(const std::string& fit_dir, const std::string& out_dir) {
    const fs::path cfg_path = fs::path(fit_dir) / "resolved_config.cfg";
    if (!fs::exists(cfg_path))
        throw RuntimeError("missing " + cfg_path.string() + " (run the recover command first)");
    const FullConfig config = load_config(cfg_path.string());
    const ExperimentConfig exp = config.experiment();
    const GenerativeModel model = build_model(exp.task, exp.hyper);

    // Analysis target: models fitted to the M3-generated data, run 0, fold 0.
    const int run = 0;
    std::vector<AgentSpec> fitted;
    for (AgentKind k : kFittedKinds)
        fitted.push_back(load_fitted_spec(fit_dir, "M3", run, k));

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    std::vector<std::vector<std::vector<TrialRecord>>> records;  // [kind][run][trial]
    for (const AgentSpec& spec : fitted) records.push_back(resimulate(spec, exp, model));
    const std::vector<std::vector<TrialRecord>>& m3_records = records[2];

    // Panels A/B: reversal-aligned profile weights of the fitted M3.
    write_weight_panel(dir / "panel_a.csv", dir / "panel_a.svg",
                       align_to_reversals(m3_records, exp.task,
                                          ReversalDirection::kVolToStable, 10, 40),
                       "Profile weights around volatile-to-stable reversals");
    write_weight_panel(dir / "panel_b.csv", dir / "panel_b.svg",
                       align_to_reversals(m3_records, exp.task,
                                          ReversalDirection::kStableToVol, 10, 40),
                       "Profile weights around stable-to-volatile reversals");

    // Panel C: reversal-aligned effective precision for all three fits.
    {
        const fs::path p = dir / "panel_c.csv";
        std::ofstream out = open_out(p);
        out << "model,offset,mean_gamma,se_gamma,n_events\n";
        svg::LinePlot plot;
        plot.title = "Effective precision around reversals";
        plot.xlabel = "trials from reversal";
        plot.ylabel = "gamma_eff";
        for (std::size_t k = 0; k < kFittedKinds.size(); ++k) {
            const AlignedGammaSeries s =
                reversal_aligned_gamma(records[k], exp.task, ReversalDirection::kAny, 20, 20);
            svg::Series line{to_string(kFittedKinds[k]), {}, {}, kModelColors[k], {}, {}};
            for (std::size_t i = 0; i < s.offsets.size(); ++i) {
                out << to_string(kFittedKinds[k]) << "," << s.offsets[i] << ","
                    << fmt6(s.mean_gamma[i]) << "," << fmt6(s.se_gamma[i]) << ","
                    << s.n_events[i] << "\n";
                line.x.push_back(s.offsets[i]);
                line.y.push_back(s.mean_gamma[i]);
            }
            plot.series.push_back(line);
        }
        plot.vlines.push_back({0.0, "#555555", true});
        finish(out, p);
        plot.write((dir / "panel_c.svg").string());
    }

    // Panels D/E: context-conditional precision and hint rate.
    {
        const fs::path pd = dir / "panel_d.csv";
        const fs::path pe = dir / "panel_e.csv";
        std::ofstream outd = open_out(pd);
        std::ofstream oute = open_out(pe);
        outd << "model,context,mean_gamma_eff,n_trials\n";
        oute << "model,context,hint_rate,n_trials\n";
        svg::BarPlot gplot, hplot;
        gplot.title = "Context-conditional effective precision";
        gplot.ylabel = "mean gamma_eff";
        hplot.title = "Context-conditional hint rate";
        hplot.ylabel = "hint rate";
        svg::BarGroup gvol{"volatile", {}}, gstab{"stable", {}};
        svg::BarGroup hvol{"volatile", {}}, hstab{"stable", {}};
        for (std::size_t k = 0; k < kFittedKinds.size(); ++k) {
            const ContextStats st = context_conditional_stats(records[k]);
            const char* name = to_string(kFittedKinds[k]);
            outd << name << ",volatile," << fmt6(st.gamma_volatile) << "," << st.n_volatile
                 << "\n";
            outd << name << ",stable," << fmt6(st.gamma_stable) << "," << st.n_stable << "\n";
            oute << name << ",volatile," << fmt6(st.hint_rate_volatile) << ","
                 << st.n_volatile << "\n";
            oute << name << ",stable," << fmt6(st.hint_rate_stable) << "," << st.n_stable
                 << "\n";
            gplot.series_labels.push_back(name);
            gplot.series_colors.push_back(kModelColors[k]);
            hplot.series_labels.push_back(name);
            hplot.series_colors.push_back(kModelColors[k]);
            gvol.values.push_back(st.gamma_volatile);
            gstab.values.push_back(st.gamma_stable);
            hvol.values.push_back(st.hint_rate_volatile);
            hstab.values.push_back(st.hint_rate_stable);
        }
        gplot.groups = {gvol, gstab};
        hplot.groups = {hvol, hstab};
        finish(outd, pd);
        finish(oute, pe);
        gplot.write((dir / "panel_d.svg").string());
        hplot.write((dir / "panel_e.svg").string());
    }

    // Panel F: profile stability under a pure-volatile schedule.
    {
        const StabilityResult st = profile_stability(fitted[2], exp.task, exp.hyper,
                                                     /*n_sims=*/10, /*n_trials=*/200,
                                                     exp.base_seed);
        const fs::path p = dir / "panel_f.csv";
        std::ofstream out = open_out(p);
        out << "trial,mean_w0,mean_w1,is_micro_reversal\n";
        svg::LinePlot plot;
        plot.title = "Profile weights, pure volatile schedule";
        plot.xlabel = "trial";
        plot.ylabel = "profile weight";
        svg::Series w0{"w0 (volatile)", {}, {}, "#c0392b", {}, {}};
        svg::Series w1{"w1 (stable)", {}, {}, "#1f6fb2", {}, {}};
        for (std::size_t t = 0; t < st.mean_w0.size(); ++t) {
            out << t << "," << fmt6(st.mean_w0[t]) << "," << fmt6(st.mean_w1[t]) << ","
                << static_cast<int>(st.is_micro_reversal[t]) << "\n";
            w0.x.push_back(static_cast<double>(t));
            w0.y.push_back(st.mean_w0[t]);
            w1.x.push_back(static_cast<double>(t));
            w1.y.push_back(st.mean_w1[t]);
            if (st.is_micro_reversal[t])
                plot.vlines.push_back({static_cast<double>(t), "#bbbbbb", true});
        }
        plot.series = {w0, w1};
        plot.hlines.push_back({0.5, "#aaaaaa", true});
        finish(out, p);
        plot.write((dir / "panel_f.svg").string());

        const fs::path ps = dir / "panel_f_stats.csv";
        std::ofstream outs = open_out(ps);
        outs << "reversal_mean_abs_dw0,baseline_mean_abs_dw0,effect,ci_lo,ci_hi,n_sims\n";
        outs << fmt6(st.reversal_mean_abs_dw0) << "," << fmt6(st.baseline_mean_abs_dw0) << ","
             << fmt6(st.effect) << "," << fmt6(st.ci_lo) << "," << fmt6(st.ci_hi) << ","
             << st.n_sims << "\n";
        finish(outs, ps);
    }
}

}  // namespace valprof
