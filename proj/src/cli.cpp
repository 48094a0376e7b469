#include "eplab/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "eplab/config.hpp"
#include "eplab/datagen.hpp"
#include "eplab/experiments.hpp"
#include "eplab/integrator.hpp"
#include "eplab/report.hpp"
#include "json.hpp"

namespace eplab {

namespace {

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit(RunManifest& manifest, const ExperimentConfig& cfg, const std::string& name,
          const std::string& content) {
    const std::string path = out_path(cfg, name);
    write_text_file(path, content);
    manifest.record_output(path);
}

std::string fit_detail(const RateFit& fit, double threshold) {
    std::ostringstream os;
    os << "slope=" << format_value(fit.slope) << " threshold=" << format_value(threshold)
       << " r_squared=" << format_value(fit.r_squared);
    return os.str();
}

// Slope assertions are trusted only when the log-log fit explains the data;
// below the r^2 gate the verdict is "inconclusive" rather than pass/fail.
constexpr double r2_gate = 0.9;

void record_fit(RunManifest& manifest, const std::string& name, const RateFit& fit,
                double slope_threshold) {
    const std::string detail = fit_detail(fit, slope_threshold);
    if (fit.r_squared < r2_gate)
        manifest.record_assertion(name, "inconclusive", detail);
    else
        manifest.record_assertion(name, fit.slope <= slope_threshold ? "pass" : "fail",
                                  detail);
}

nlohmann::ordered_json fit_json(const RateFit& fit) {
    nlohmann::ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& [n, v] : fit.points) pts.push_back({n, v});
    j["points"] = pts;
    return j;
}

ConstructionParams params_for(const ExperimentConfig& cfg, int n, int omega) {
    ConstructionParams p;
    p.n = n;
    p.delta = cfg.delta;
    p.omega = omega;
    p.s = cfg.s;
    p.dim = cfg.dim;
    return p;
}

Trajectory solve_checked(const VectorField& u0, const ExperimentConfig& cfg,
                         const std::vector<double>& norms, const std::string& label) {
    StepPolicy policy = StepPolicy::cfl(cfg.cfl_safety, cfg.max_steps);
    auto res = solve(u0, cfg.T, policy, cfg.sample_times, norms);
    if (!res.completed) {
        std::ostringstream os;
        os << label << ": integration did not complete";
        if (res.blowup_time) os << " (blow-up near t=" << *res.blowup_time << ")";
        throw std::runtime_error(os.str());
    }
    return std::move(res.trajectory);
}

// ---- subcommand drivers ---------------------------------------------------

void run_lemma3(const ExperimentConfig& cfg, RunManifest& manifest) {
    auto bumps = make_bumps();
    auto res = lemma3_scan(bumps, cfg.s, cfg.delta, 0.0, cfg.n_list, true);

    std::vector<std::vector<double>> rows;
    for (const auto& r : res.rows)
        rows.push_back({static_cast<double>(r.n), r.value, r.deviation});
    emit(manifest, cfg, "lemma3.csv", format_csv({"n", "value", "deviation"}, rows));

    bool monotone = true;
    for (size_t k = 2; k < res.rows.size(); ++k)
        monotone = monotone && res.rows[k].deviation <= res.rows[k - 1].deviation;
    std::ostringstream detail;
    detail << "limit=" << format_value(res.limit)
           << " final_deviation=" << format_value(res.rows.back().deviation);
    manifest.record_assertion("lemma3_deviation_monotone", monotone ? "pass" : "fail",
                              detail.str());
    if (res.rows.size() >= 3) {
        const std::string d = fit_detail(res.deviation_fit, 0.0);
        if (res.deviation_fit.r_squared < r2_gate)
            manifest.record_assertion("lemma3_deviation_decays", "inconclusive", d);
        else
            manifest.record_assertion("lemma3_deviation_decays",
                                      res.deviation_fit.slope < 0.0 ? "pass" : "fail", d);
    }
}

void run_decay(const ExperimentConfig& cfg, RunManifest& manifest) {
    auto res = decay_scan(cfg);

    std::vector<std::vector<double>> rows;
    for (const auto& r : res.rows)
        rows.push_back({static_cast<double>(r.n), r.norm_E, r.norm_E11, r.norm_E12,
                        r.norm_E13, r.norm_F});
    emit(manifest, cfg, "decay.csv",
         format_csv({"n", "norm_E", "norm_E11", "norm_E12", "norm_E13", "norm_F"}, rows));

    nlohmann::ordered_json fits;
    fits["t"] = res.t;
    fits["E"] = fit_json(res.fit_E);
    fits["E11"] = fit_json(res.fit_E11);
    fits["E12"] = fit_json(res.fit_E12);
    fits["E13"] = fit_json(res.fit_E13);
    fits["F"] = fit_json(res.fit_F);
    emit(manifest, cfg, "decay_fits.json", fits.dump(2) + "\n");

    // Predicted rates: E ~ n^{-(2-delta)}, F and the transverse piece
    // ~ n^{-(2-delta/2)}, each with a 0.25 finite-size allowance.
    record_fit(manifest, "decay_E_rate", res.fit_E, -(2.0 - cfg.delta) + 0.25);
    record_fit(manifest, "decay_F_rate", res.fit_F, -(2.0 - 0.5 * cfg.delta) + 0.25);
    record_fit(manifest, "decay_E13_rate", res.fit_E13, -(2.0 - 0.5 * cfg.delta) + 0.25);
}

void run_stability(const ExperimentConfig& cfg, RunManifest& manifest) {
    auto res = stability_scan(cfg);

    std::vector<std::vector<double>> rows;
    for (const auto& r : res.rows)
        rows.push_back({static_cast<double>(r.n), r.sup_deviation});
    emit(manifest, cfg, "stability.csv", format_csv({"n", "sup_deviation"}, rows));
    emit(manifest, cfg, "stability_fit.json", fit_json(res.fit).dump(2) + "\n");

    record_fit(manifest, "stability_rate", res.fit, -(2.0 - cfg.delta) + 0.25);
}

void run_gap(const ExperimentConfig& cfg, RunManifest& manifest) {
    auto scan = gap_experiment(cfg);

    std::vector<std::vector<double>> rows;
    for (const auto& rep : scan.reports)
        for (size_t k = 0; k < rep.times.size(); ++k) {
            const double ref = rep.reference[k];
            rows.push_back({static_cast<double>(rep.n), rep.times[k], rep.gap[k], ref,
                            ref > 0.0 ? rep.gap[k] / ref : 0.0});
        }
    emit(manifest, cfg, "gap.csv",
         format_csv({"n", "t", "gap", "reference", "ratio"}, rows));

    nlohmann::ordered_json extra;
    for (const auto& rep : scan.reports) {
        nlohmann::ordered_json row;
        row["n"] = rep.n;
        row["profile_norm"] = rep.profile_norm;
        row["initial_gap"] = rep.initial_gap;
        row["epsilon_n"] = rep.epsilon_n;
        row["epsilon_prime_n"] = rep.epsilon_prime_n;
        row["approx_dev_plus"] = rep.approx_dev_plus;
        row["approx_dev_minus"] = rep.approx_dev_minus;
        extra["reports"].push_back(row);
    }
    if (!scan.approx_fit.points.empty()) extra["approx_fit"] = fit_json(scan.approx_fit);
    emit(manifest, cfg, "gap_summary.json", extra.dump(2) + "\n");

    // (a) initial gaps follow n^{-1+delta/2} across consecutive n.
    for (size_t k = 1; k < scan.reports.size(); ++k) {
        const auto& lo = scan.reports[k - 1];
        const auto& hi = scan.reports[k];
        const double predicted = std::pow(static_cast<double>(hi.n) / lo.n,
                                          -1.0 + 0.5 * cfg.delta);
        const double measured = hi.initial_gap / lo.initial_gap;
        std::ostringstream name, detail;
        name << "gap_initial_ratio_n" << lo.n << "_n" << hi.n;
        detail << "measured=" << format_value(measured)
               << " predicted=" << format_value(predicted);
        manifest.record_assertion(name.str(),
                                  std::abs(measured / predicted - 1.0) <= 0.2 ? "pass"
                                                                              : "fail",
                                  detail.str());
    }

    // (b) at the largest n the gap clears half the |sin t| reference.
    const auto& top = scan.reports.back();
    bool cleared = true;
    double worst = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < top.times.size(); ++k) {
        if (top.reference[k] <= 0.0) continue;
        const double ratio = top.gap[k] / top.reference[k];
        worst = std::min(worst, ratio);
        cleared = cleared && ratio >= 0.5;
    }
    std::ostringstream bd;
    bd << "n=" << top.n << " min_gap_over_reference=" << format_value(worst);
    manifest.record_assertion("gap_clears_sin_reference", cleared ? "pass" : "fail",
                              bd.str());

    // (c) the normalized gap at the final sampled time grows with n.
    bool grows = true;
    for (size_t k = 1; k < scan.reports.size(); ++k) {
        const auto& lo = scan.reports[k - 1];
        const auto& hi = scan.reports[k];
        grows = grows && hi.gap.back() / hi.initial_gap > lo.gap.back() / lo.initial_gap;
    }
    manifest.record_assertion("gap_normalized_growth_in_n", grows ? "pass" : "fail");

    if (!scan.approx_fit.points.empty())
        record_fit(manifest, "gap_approximation_rate", scan.approx_fit,
                   -(2.0 - 0.5 * cfg.delta) + 0.3);
}

void run_growth(const ExperimentConfig& cfg, RunManifest& manifest) {
    const std::vector<double> norms = {cfg.s - 1.0, cfg.s, cfg.s + 1.0};
    auto bumps = make_bumps();

    // One trajectory per n; the constant is calibrated on the first and then
    // frozen (with 50% headroom) for every subsequent check.
    double constant = 0.0;
    std::vector<std::vector<double>> rows;
    for (size_t k = 0; k < cfg.n_list.size(); ++k) {
        const int n = cfg.n_list[k];
        auto p = params_for(cfg, n, 1);
        auto grid = construction_grid(n, cfg.delta, cfg.dim);
        auto u0 = combined_initial(grid, bumps, p);
        std::ostringstream label;
        label << "growth n=" << n;
        auto traj = solve_checked(u0, cfg, norms, label.str());

        if (k == 0) constant = 1.5 * calibrate_growth_constant(traj, cfg.s) + 1e-6;
        auto rep = growth_monitor(traj, cfg.s, constant);
        for (const auto& r : rep.rows)
            rows.push_back({static_cast<double>(n), r.t, r.integral_s, r.margin_minus,
                            r.margin_plus});

        std::ostringstream name, detail;
        name << "growth_bound_n" << n;
        detail << "constant=" << format_value(constant);
        manifest.record_assertion(name.str(), rep.holds ? "pass" : "fail", detail.str());
    }
    emit(manifest, cfg, "growth.csv",
         format_csv({"n", "t", "integral_s", "margin_minus", "margin_plus"}, rows));
}

void run_product_laws(const ExperimentConfig& cfg, RunManifest& manifest) {
    auto grid = make_grid(cfg.dim, 32, 2.0 * std::numbers::pi);
    auto base = product_law_probe(cfg.sample_count, cfg.s, grid, cfg.seed);
    auto doubled = product_law_probe(2 * cfg.sample_count, cfg.s, grid, cfg.seed);

    std::vector<std::vector<double>> rows = {
        {static_cast<double>(base.samples), base.max_symmetric, base.max_linf,
         base.max_mixed},
        {static_cast<double>(doubled.samples), doubled.max_symmetric, doubled.max_linf,
         doubled.max_mixed}};
    emit(manifest, cfg, "product_laws.csv",
         format_csv({"samples", "max_symmetric", "max_linf", "max_mixed"}, rows));

    auto check = [&](const std::string& name, double small, double big) {
        std::ostringstream detail;
        detail << "base=" << format_value(small) << " doubled=" << format_value(big);
        const bool ok = std::isfinite(small) && small > 0.0 && big <= 1.2 * small;
        manifest.record_assertion(name, ok ? "pass" : "fail", detail.str());
    };
    check("product_law_symmetric_stable", base.max_symmetric, doubled.max_symmetric);
    check("product_law_linf_stable", base.max_linf, doubled.max_linf);
    check("product_law_mixed_stable", base.max_mixed, doubled.max_mixed);
}

void run_solve(const ExperimentConfig& cfg, RunManifest& manifest) {
    const int n = cfg.n_list.back();
    auto bumps = make_bumps();
    auto p = params_for(cfg, n, 1);
    auto grid = construction_grid(n, cfg.delta, cfg.dim);
    auto u0 = combined_initial(grid, bumps, p);

    const std::vector<double> norms = {cfg.s - 1.0, cfg.s, cfg.s + 1.0};
    StepPolicy policy = StepPolicy::cfl(cfg.cfl_safety, cfg.max_steps);
    auto res = solve(u0, cfg.T, policy, cfg.sample_times, norms);

    std::vector<std::vector<double>> rows;
    const auto& traj = res.trajectory;
    for (size_t k = 0; k < traj.times.size(); ++k)
        rows.push_back({traj.times[k], traj.norm_log.at(norms[0])[k],
                        traj.norm_log.at(norms[1])[k], traj.norm_log.at(norms[2])[k]});
    emit(manifest, cfg, "solve_norms.csv",
         format_csv({"t", "norm_s_minus_1", "norm_s", "norm_s_plus_1"}, rows));
    if (!traj.snapshots.empty())
        emit(manifest, cfg, "solution_field.txt", format_field(traj.snapshots.back()));

    std::ostringstream detail;
    detail << "n=" << n << " steps=" << res.steps;
    if (res.blowup_time) detail << " blowup_t=" << format_value(*res.blowup_time);
    manifest.record_assertion("solution_remained_finite",
                              res.completed ? "pass" : "fail", detail.str());
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Pseudospectral experiments for a two-scale transport construction"};
    app.name("ep-lab");
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
        void (*fn)(const ExperimentConfig&, RunManifest&);
    };
    const Entry entries[] = {
        {"lemma3", "modulated-packet norm asymptotics", run_lemma3},
        {"decay", "residual decay rates across n", run_decay},
        {"stability", "low-frequency solution stability", run_stability},
        {"gap", "solution-gap (non-uniform dependence) sweep", run_gap},
        {"growth", "calibrated exponential growth bounds", run_growth},
        {"product-laws", "empirical product-law constants", run_product_laws},
        {"solve", "integrate the combined datum and dump the field", run_solve},
    };

    std::string config_path;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", config_path, "configuration file")->required();
    }

    std::vector<const char*> argv;
    argv.push_back("ep-lab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 3;
    }

    const Entry* chosen = nullptr;
    for (const auto& e : entries)
        if (app.get_subcommand(e.name)->parsed()) chosen = &e;

    try {
        ExperimentConfig cfg = parse_config(config_path);
        RunManifest manifest(chosen->name, cfg);
        const auto start = std::chrono::steady_clock::now();
        chosen->fn(cfg, manifest);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        manifest.record_timing(chosen->name, seconds);
        manifest.write(out_path(cfg, "manifest.json"));

        for (const auto& a : manifest.assertions())
            std::cout << chosen->name << " " << a.name << ": " << a.status
                      << (a.detail.empty() ? "" : "  [" + a.detail + "]") << "\n";
        return manifest.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "ep-lab: " << e.what() << "\n";
        return 3;
    }
}

int run_cli(int argc, const char* const* argv) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace eplab
