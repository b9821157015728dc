#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracsurv/errors.hpp"
#include "fracsurv/estimation.hpp"
#include "fracsurv/io.hpp"
#include "fracsurv/model.hpp"
#include "fracsurv/nonparam.hpp"
#include "fracsurv/simulate.hpp"
#include "fracsurv/version.hpp"

namespace {

using namespace fracsurv;

struct ParamFlags {
    double alpha = 0.0, lambda = 0.0, mu = 0.0, tmax = 0.0;
    CLI::Option *o_alpha = nullptr, *o_lambda = nullptr, *o_mu = nullptr, *o_tmax = nullptr;

    void add(CLI::App* cmd, bool required) {
        o_alpha = cmd->add_option("--alpha", alpha, "shape parameter alpha");
        o_lambda = cmd->add_option("--lambda", lambda, "fractional order lambda (> 0)");
        o_mu = cmd->add_option("--mu", mu, "rate parameter mu");
        o_tmax = cmd->add_option("--tmax", tmax, "finite support endpoint T (> 0)");
        if (required) {
            o_alpha->required();
            o_lambda->required();
            o_mu->required();
            o_tmax->required();
        }
    }
    int count() const {
        return (int)(o_alpha->count() + o_lambda->count() + o_mu->count() + o_tmax->count());
    }
    ModelParams params() const { return {alpha, lambda, mu, tmax}; }
};

void print_fit_table(const FitResult& r) {
    const char* names[4] = {"alpha", "lambda", "mu", "T"};
    double est[4] = {r.params.alpha, r.params.lam, r.params.mu, r.params.t_max};
    std::printf("%-10s %12s %16s\n", "Parameter", "Estimate", "Standard Error");
    for (int i = 0; i < 4; ++i) {
        if (r.se_available)
            std::printf("%-10s %12.4f %16.4f\n", names[i], est[i], r.std_errors[i]);
        else
            std::printf("%-10s %12.4f %16s\n", names[i], est[i], "n/a");
    }
    std::printf("\nlog-likelihood: %.4f\n", r.log_likelihood);
    std::printf("observations: %d (%d events, %d censored)\n", r.n_events + r.n_censored,
                r.n_events, r.n_censored);
    std::printf("converged: %s (%d iterations)\n", r.converged ? "yes" : "no", r.n_iter);
}

int exit_code_for(const error& e) {
    switch (e.kind()) {
    case errc::parse:
    case errc::invalid_argument:
        return 1;
    case errc::no_convergence:
    case errc::numerical:
    case errc::domain:
        return 2;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracsurv: fractional survival model with finite support"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    auto* c_fit = app.add_subcommand("fit", "fit the model to a censored dataset");
    std::string fit_data, fit_out = "fit_report.json";
    FitConfig fit_cfg;
    ParamFlags fit_init;
    c_fit->add_option("dataset", fit_data, "CSV file with time,event rows")->required();
    c_fit->add_option("--out", fit_out, "output FitReport path");
    c_fit->add_option("--restarts", fit_cfg.n_restarts, "number of jittered restarts");
    c_fit->add_option("--seed", fit_cfg.seed, "seed for restart jitter");
    c_fit->add_option("--max-iter", fit_cfg.max_iter, "simplex iteration cap");
    c_fit->add_option("--xtol", fit_cfg.xtol, "simplex diameter tolerance");
    c_fit->add_option("--ftol", fit_cfg.ftol, "objective spread tolerance (absolute)");
    c_fit->add_option("--t-margin", fit_cfg.t_margin, "default T0 = (1+margin)*max time");
    fit_init.add(c_fit, false);

    auto* c_curves = app.add_subcommand("curves", "tabulate cdf/survival/pdf/hazard");
    std::string curves_report, curves_out = "curves.csv";
    int curves_grid = 512;
    double curves_trunc = 0.0;
    ParamFlags curves_p;
    curves_p.add(c_curves, false);
    auto* o_report = c_curves->add_option("--report", curves_report, "take params from a FitReport");
    auto* o_trunc = c_curves->add_option("--truncate", curves_trunc, "tabulate only [0, truncate]");
    c_curves->add_option("--grid", curves_grid, "number of interior grid points");
    c_curves->add_option("--out", curves_out, "output CSV path");

    auto* c_na = app.add_subcommand("na", "Nelson-Aalen cumulative hazard and survival");
    std::string na_data, na_out = "na.csv";
    double na_trunc = 0.0;
    c_na->add_option("dataset", na_data, "CSV file with time,event rows")->required();
    auto* o_na_trunc = c_na->add_option("--truncate", na_trunc, "drop steps beyond this time");
    c_na->add_option("--out", na_out, "output CSV path");

    auto* c_classify = app.add_subcommand("classify", "name the hazard-curve shape");
    int classify_grid = 257;
    ParamFlags classify_p;
    classify_p.add(c_classify, true);
    c_classify->add_option("--grid", classify_grid, "classification grid size");

    auto* c_sim = app.add_subcommand("simulate", "draw a synthetic censored cohort");
    std::string sim_out = "dataset.csv";
    int sim_n = 0;
    std::uint64_t sim_seed = 0;
    double sim_cutoff = 0.0;
    std::vector<double> sim_uniform;
    ParamFlags sim_p;
    sim_p.add(c_sim, true);
    c_sim->add_option("--n", sim_n, "cohort size")->required();
    c_sim->add_option("--seed", sim_seed, "generator seed");
    auto* o_cut = c_sim->add_option("--censor-at", sim_cutoff, "administrative censoring time");
    auto* o_unif =
        c_sim->add_option("--censor-uniform", sim_uniform, "uniform censoring bounds lo hi")
            ->expected(2);
    o_cut->excludes(o_unif);
    c_sim->add_option("--out", sim_out, "output dataset path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_fit->parsed()) {
            if (fit_init.count() != 0) {
                if (fit_init.count() != 4)
                    throw error(errc::invalid_argument,
                                "initial guess needs all of --alpha --lambda --mu --tmax");
                fit_cfg.initial = fit_init.params();
            }
            auto data = read_dataset(fit_data);
            auto res = fit(data, fit_cfg);
            write_fit_report(fit_out, res, summarize(data), fit_cfg);
            print_fit_table(res);
            return res.converged ? 0 : 3;
        }
        if (c_curves->parsed()) {
            ModelParams p{};
            if (o_report->count()) {
                p = read_fit_report(curves_report).result.params;
            } else if (curves_p.count() == 4) {
                p = curves_p.params();
            } else {
                throw error(errc::invalid_argument,
                            "need either --report or all of --alpha --lambda --mu --tmax");
            }
            validate_params(p);
            if (curves_grid < 1)
                throw error(errc::invalid_argument, "--grid must be >= 1");
            double upper = p.t_max;
            if (o_trunc->count()) {
                if (!(curves_trunc > 0.0))
                    throw error(errc::invalid_argument, "--truncate must be > 0 (empty grid)");
                if (curves_trunc > p.t_max)
                    std::cerr << "warning: truncation " << curves_trunc
                              << " is beyond T = " << p.t_max << ", clipping to T\n";
                else
                    upper = curves_trunc;
            }
            std::vector<double> times(curves_grid);
            for (int i = 0; i < curves_grid; ++i)
                times[i] = upper * (i + 1) / (curves_grid + 1);
            write_curve_csv(curves_out, curve_table(p, times));
            return 0;
        }
        if (c_na->parsed()) {
            auto data = read_dataset(na_data);
            auto h = nelson_aalen(data);
            if (o_na_trunc->count()) {
                StepFunction cut;
                cut.pre_value = h.pre_value;
                for (std::size_t i = 0; i < h.times.size(); ++i)
                    if (h.times[i] <= na_trunc) {
                        cut.times.push_back(h.times[i]);
                        cut.values.push_back(h.values[i]);
                        cut.variances.push_back(h.variances[i]);
                    }
                h = cut;
            }
            write_step_csv(na_out, h);
            return 0;
        }
        if (c_classify->parsed()) {
            ModelParams p = classify_p.params();
            auto report = is_valid_density(p);
            if (!report.valid) {
                std::cerr << "invalid density: " << report.reason
                          << " at t = " << report.first_bad_t << "\n";
                return 2;
            }
            std::cout << classify_hazard_shape(p, classify_grid).label << "\n";
            return 0;
        }
        if (c_sim->parsed()) {
            CohortSpec spec;
            spec.params = sim_p.params();
            spec.n = sim_n;
            spec.seed = sim_seed;
            if (o_cut->count()) {
                spec.censoring = CensoringKind::administrative;
                spec.cutoff = sim_cutoff;
            } else if (o_unif->count()) {
                spec.censoring = CensoringKind::uniform;
                spec.lo = sim_uniform[0];
                spec.hi = sim_uniform[1];
            }
            validate_params(spec.params);
            auto report = is_valid_density(spec.params);
            if (!report.valid) {
                std::cerr << "invalid density: " << report.reason
                          << " at t = " << report.first_bad_t << "\n";
                return 2;
            }
            write_dataset(sim_out, make_cohort(spec));
            return 0;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
