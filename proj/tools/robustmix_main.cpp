// robustmix: optimal standard/adversarial linear classifiers for binary
// Gaussian mixtures, exact risks, regime analysis, gap bounds, and the
// experiment sweeps behind the bundled figure presets.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 solver
// non-convergence, 4 applicability violation.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robustmix/analysis.hpp"
#include "robustmix/classifiers.hpp"
#include "robustmix/csv.hpp"
#include "robustmix/experiment.hpp"
#include "robustmix/montecarlo.hpp"
#include "robustmix/risk.hpp"

namespace {

using robustmix::model::Matrix;
using robustmix::model::Vector;

Vector parse_vector(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        vals.push_back(std::stod(item));
    }
    if (vals.empty()) throw robustmix::experiment::ConfigError("empty vector: " + text);
    return Eigen::Map<const Vector>(vals.data(), static_cast<long>(vals.size()));
}

// "a,b;c,d" row-major, or the shorthand "<s>I<d>" for s * identity.
Matrix parse_matrix(const std::string& text) {
    auto ipos = text.find('I');
    if (ipos != std::string::npos && text.find(';') == std::string::npos &&
        text.find(',') == std::string::npos) {
        double scale = std::stod(text.substr(0, ipos));
        int dim = std::stoi(text.substr(ipos + 1));
        if (dim < 1) throw robustmix::experiment::ConfigError("bad identity shorthand: " + text);
        Matrix m = Matrix::Zero(dim, dim);
        m.diagonal().setConstant(scale);
        return m;
    }
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row_text;
    while (std::getline(ss, row_text, ';')) {
        std::vector<double> row;
        std::stringstream rs(row_text);
        std::string item;
        while (std::getline(rs, item, ',')) row.push_back(std::stod(item));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw robustmix::experiment::ConfigError("empty matrix: " + text);
    Matrix m(static_cast<long>(rows.size()), static_cast<long>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) {
            throw robustmix::experiment::ConfigError("sigma must be square (row " +
                                                     std::to_string(r) + ")");
        }
        for (size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<long>(r), static_cast<long>(c)) = rows[r][c];
        }
    }
    return m;
}

std::string fmt(double v) { return robustmix::csv::format_double(v); }

struct PointArgs {
    std::string mu_text;
    std::string sigma_text;
    double pi_plus = 0.5;
    double eps = 0.0;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    long mc_samples = 0;

    robustmix::model::GaussianMixture mixture() const {
        return robustmix::model::GaussianMixture(parse_vector(mu_text), parse_matrix(sigma_text),
                                                 pi_plus);
    }
};

void add_point_flags(CLI::App* cmd, PointArgs& args, bool with_eps = true) {
    cmd->add_option("--mu", args.mu_text, "class mean, comma separated (e.g. 1.5,2,4)")
        ->required();
    cmd->add_option("--sigma", args.sigma_text,
                    "covariance rows separated by ';' (e.g. 3,0;0,3) or scalar identity (3I2)")
        ->required();
    if (with_eps) cmd->add_option("--eps", args.eps, "adversarial budget (l_inf)");
    cmd->add_option("--pi", args.pi_plus, "P[y=+1], in (0,1)");
    cmd->add_option("--tol", args.tol, "box-QP solver tolerance");
    cmd->add_option("--seed", args.seed, "rng seed (used by Monte Carlo cross-checks)");
}

int run_solve(const PointArgs& args) {
    auto mixture = args.mixture();
    auto sol = robustmix::boxqp::solve_zstar(mixture, robustmix::model::ThreatModel(args.eps),
                                             args.tol);
    std::cout << "z_star:";
    for (long i = 0; i < sol.z_star.size(); ++i) std::cout << " " << fmt(sol.z_star[i]);
    std::cout << "\nobjective: " << fmt(sol.objective) << "\nkkt_residual: " << fmt(sol.kkt_residual)
              << "\niterations: " << sol.iterations << "\nactive_set:";
    for (auto a : sol.active_set) {
        std::cout << " "
                  << (a == robustmix::boxqp::Activity::upper
                          ? "upper"
                          : a == robustmix::boxqp::Activity::lower ? "lower" : "interior");
    }
    std::cout << "\n";
    return 0;
}

int run_risk(const PointArgs& args) {
    auto mixture = args.mixture();
    robustmix::model::ThreatModel threat(args.eps);
    robustmix::boxqp::SolveOptions opts;
    opts.tol = args.tol;
    auto bayes = robustmix::classifiers::bayes_classifier(mixture);
    auto adv = robustmix::classifiers::adversarial_classifier(mixture, threat, opts);
    auto bayes_report = robustmix::risk::adversarial_risk(bayes, mixture, threat);
    auto adv_report = robustmix::risk::adversarial_risk(adv.classifier, mixture, threat);

    std::cout << "bayes_w:";
    for (long i = 0; i < bayes.w.size(); ++i) std::cout << " " << fmt(bayes.w[i]);
    std::cout << "\nadv_w:";
    for (long i = 0; i < adv.classifier.w.size(); ++i) std::cout << " " << fmt(adv.classifier.w[i]);
    std::cout << "\nw0: " << fmt(bayes.w0) << (adv.trivial ? "  (trivial adversarial budget)" : "")
              << "\nnat_risk_bayes: " << fmt(bayes_report.natural_risk)
              << "\nadv_risk_bayes: " << fmt(bayes_report.adversarial_risk)
              << "\nnat_risk_adv: " << fmt(adv_report.natural_risk)
              << "\nadv_risk_adv: " << fmt(adv_report.adversarial_risk)
              << "\ngap: " << fmt(robustmix::risk::gap(mixture, threat, opts)) << "\n";
    if (args.mc_samples > 0) {
        auto est = robustmix::montecarlo::empirical_adversarial_risk(
            adv.classifier, mixture, threat, args.mc_samples,
            robustmix::montecarlo::RngSpec{args.seed, 0});
        std::cout << "mc_adv_risk_adv: " << fmt(est.estimate) << " +/- " << fmt(est.std_error)
                  << " (n=" << est.n << ")\n";
    }
    return 0;
}

int run_regime(const PointArgs& args) {
    auto mixture = args.mixture();
    robustmix::model::ThreatModel threat(args.eps);
    robustmix::boxqp::SolveOptions opts;
    opts.tol = args.tol;
    auto rr = robustmix::analysis::risk_regime(mixture, threat, opts);
    auto gr = robustmix::analysis::gap_regime(mixture, threat, opts);
    auto name = [](robustmix::analysis::Regime r) {
        return r == robustmix::analysis::Regime::surprising ? "surprising" : "standard";
    };
    std::cout << "c: " << fmt(rr.params.c) << "\nd: " << fmt(rr.params.d)
              << "\nratio: " << fmt(rr.params.ratio) << "\nrisk_regime: " << name(rr.label)
              << (rr.near_boundary ? " (warning: condition sides within 1e-10)" : "")
              << "\ngap_regime: " << name(gr.label)
              << (gr.near_boundary ? " (warning: condition sides within 1e-10)" : "")
              << "\ngap_condition_lhs: " << fmt(gr.condition_lhs)
              << "\ngap_condition_rhs: " << fmt(gr.condition_rhs) << "\n";
    return 0;
}

int run_bounds(const PointArgs& args) {
    auto mixture = args.mixture();
    robustmix::model::ThreatModel threat(args.eps);
    robustmix::boxqp::SolveOptions opts;
    opts.tol = args.tol;
    auto terms = robustmix::analysis::gap_bound_terms(mixture);
    std::cout << "C_sigma_mu: " << fmt(terms.C_sigma_mu)
              << "\neps_limit_A: " << fmt(terms.eps_limit_A)
              << "\neps_limit_B: " << fmt(terms.eps_limit_B)
              << "\ngap: " << fmt(robustmix::risk::gap(mixture, threat, opts)) << "\n";
    using Form = robustmix::analysis::UpperBoundForm;
    std::cout << "upper_phi_difference: "
              << fmt(robustmix::analysis::gap_upper_bound(mixture, threat, Form::phi_difference))
              << "\nupper_precise: "
              << fmt(robustmix::analysis::gap_upper_bound(mixture, threat, Form::precise))
              << "\nupper_exponential: "
              << fmt(robustmix::analysis::gap_upper_bound(mixture, threat, Form::exponential))
              << "\n";
    try {
        std::cout << "lower_bound: "
                  << fmt(robustmix::analysis::gap_lower_bound(mixture, threat)) << "\n";
    } catch (const robustmix::ApplicabilityError&) {
        std::cout << "lower_bound: not applicable (needs diagonal sigma and min|mu_i| >= eps)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal adversarial linear classification for binary Gaussian mixtures"};
    app.require_subcommand(1);

    PointArgs solve_args, risk_args, regime_args, bounds_args;
    std::string config_path, preset_name, out_dir = ".";
    double run_tol = -1.0;
    std::uint64_t run_seed = 0;
    bool no_svg = false;

    auto* solve_cmd = app.add_subcommand("solve", "solve the box-constrained QP for z*");
    add_point_flags(solve_cmd, solve_args);
    auto* risk_cmd = app.add_subcommand("risk", "optimal classifiers and their exact risks");
    add_point_flags(risk_cmd, risk_args);
    risk_cmd->add_option("--mc", risk_args.mc_samples,
                         "cross-check the closed form with this many Monte Carlo samples");
    auto* regime_cmd = app.add_subcommand("regime", "imbalance regime classification (c vs d^2)");
    add_point_flags(regime_cmd, regime_args);
    auto* bounds_cmd = app.add_subcommand("bounds", "gap bounds and applicability limits");
    add_point_flags(bounds_cmd, bounds_args);

    auto* run_cmd = app.add_subcommand("run", "run a sweep described by a JSON config");
    run_cmd->add_option("--config", config_path, "path to the experiment config")->required();
    run_cmd->add_option("--out", out_dir, "output directory override");
    run_cmd->add_option("--tol", run_tol, "solver tolerance override");
    run_cmd->add_option("--seed", run_seed, "rng seed override");
    run_cmd->add_flag("--no-svg", no_svg, "skip SVG emission");

    auto* repro_cmd = app.add_subcommand("reproduce", "run a built-in figure preset");
    repro_cmd->add_option("preset", preset_name,
                          "one of: fig1 fig2 fig3 fig4a fig4b fig5 fig6")
        ->required();
    repro_cmd->add_option("--out", out_dir, "output directory");
    repro_cmd->add_flag("--no-svg", no_svg, "skip SVG emission");
    repro_cmd->add_option("--seed", run_seed, "rng seed override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (risk_cmd->parsed()) return run_risk(risk_args);
        if (regime_cmd->parsed()) return run_regime(regime_args);
        if (bounds_cmd->parsed()) return run_bounds(bounds_args);

        robustmix::experiment::ExperimentConfig config;
        if (run_cmd->parsed()) {
            config = robustmix::experiment::ExperimentConfig::load(config_path);
            if (run_cmd->count("--out")) config.out_dir = out_dir;
        } else {
            config = robustmix::experiment::preset(preset_name);
            config.out_dir = out_dir;
        }
        if (run_tol > 0.0) config.tol = run_tol;
        if (run_cmd->count("--seed") || repro_cmd->count("--seed")) config.seed = run_seed;
        if (no_svg) config.emit_svg = false;
        auto result = robustmix::experiment::run(config);
        std::cout << result.summary;
        return 0;
    } catch (const robustmix::experiment::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const robustmix::boxqp::ConvergenceError& e) {
        std::cerr << "solver did not converge: " << e.what() << "\n";
        return 3;
    } catch (const robustmix::ApplicabilityError& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return 4;
    } catch (const robustmix::UnsupportedError& e) {
        std::cerr << "unsupported configuration: " << e.what() << "\n";
        return 4;
    } catch (const robustmix::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
