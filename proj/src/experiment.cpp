#include "robustmix/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "robustmix/analysis.hpp"
#include "robustmix/classifiers.hpp"
#include "robustmix/csv.hpp"
#include "robustmix/montecarlo.hpp"
#include "robustmix/parallel.hpp"
#include "robustmix/risk.hpp"
#include "robustmix/svg.hpp"

namespace robustmix::experiment {

using nlohmann::json;

SweepKind sweep_kind_from_string(const std::string& name) {
    if (name == "pi_sweep") return SweepKind::pi_sweep;
    if (name == "eps_sweep") return SweepKind::eps_sweep;
    if (name == "regime") return SweepKind::regime;
    if (name == "bounds") return SweepKind::bounds;
    if (name == "finite_sample") return SweepKind::finite_sample;
    if (name == "breakpoints") return SweepKind::breakpoints;
    throw ConfigError("unknown sweep kind: " + name);
}

std::string to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::pi_sweep: return "pi_sweep";
        case SweepKind::eps_sweep: return "eps_sweep";
        case SweepKind::regime: return "regime";
        case SweepKind::bounds: return "bounds";
        case SweepKind::finite_sample: return "finite_sample";
        case SweepKind::breakpoints: return "breakpoints";
    }
    return "?";
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    if (!(stop >= start)) throw ConfigError("grid stop must be >= start");
    std::vector<double> grid;
    const double slack = step * 1e-9;
    for (long k = 0;; ++k) {
        double v = start + static_cast<double>(k) * step;
        if (v > stop + slack) break;
        grid.push_back(std::min(v, stop));
    }
    return grid;
}

namespace {

std::vector<double> parse_axis(const json& j, const char* key) {
    const json& spec = j.at(key);
    std::vector<double> values;
    if (spec.is_array()) {
        values = spec.get<std::vector<double>>();
    } else if (spec.is_object()) {
        values = make_grid(spec.at("start").get<double>(), spec.at("stop").get<double>(),
                           spec.at("step").get<double>());
    } else {
        throw ConfigError(std::string(key) + " must be an array or {start, stop, step}");
    }
    if (values.empty()) throw ConfigError(std::string(key) + " is empty");
    for (size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw ConfigError(std::string(key) + " must be strictly increasing");
        }
    }
    return values;
}

json axis_to_json(const std::vector<double>& values) {
    return json(values);
}

std::string activity_string(const std::vector<boxqp::Activity>& a) {
    std::string s;
    for (auto v : a) {
        s += v == boxqp::Activity::upper ? '+' : (v == boxqp::Activity::lower ? '-' : '0');
    }
    return s;
}

}  // namespace

namespace {

ExperimentConfig config_from_json(const json& j) {
    try {
        ExperimentConfig c;
        c.name = j.value("name", std::string("experiment"));
        c.sweep = sweep_kind_from_string(j.at("sweep").get<std::string>());

        auto mu_vec = j.at("mu").get<std::vector<double>>();
        c.mu = Eigen::Map<const Vector>(mu_vec.data(), static_cast<long>(mu_vec.size()));

        const json& sig = j.at("sigma");
        if (!sig.is_array() || sig.empty()) throw ConfigError("sigma must be a matrix");
        const auto n = sig.size();
        c.sigma.resize(static_cast<long>(n), static_cast<long>(n));
        for (size_t r = 0; r < n; ++r) {
            auto row = sig.at(r).get<std::vector<double>>();
            if (row.size() != n) throw ConfigError("sigma must be square");
            for (size_t col = 0; col < n; ++col) {
                c.sigma(static_cast<long>(r), static_cast<long>(col)) = row[col];
            }
        }

        if (j.contains("pi_plus")) c.pi_values = {j.at("pi_plus").get<double>()};
        if (j.contains("pi_values")) c.pi_values = j.at("pi_values").get<std::vector<double>>();
        if (j.contains("epsilon")) c.eps_values = {j.at("epsilon").get<double>()};
        if (j.contains("eps_values")) c.eps_values = j.at("eps_values").get<std::vector<double>>();
        if (j.contains("pi_grid")) c.pi_grid = parse_axis(j, "pi_grid");
        if (j.contains("eps_grid")) c.eps_grid = parse_axis(j, "eps_grid");

        c.tol = j.value("tol", 1e-10);
        c.seed = j.value("seed", std::uint64_t{0});
        c.out_dir = j.value("out_dir", std::string("."));
        c.emit_svg = j.value("emit_svg", true);
        c.plot_y = j.value("plot_y", std::string());

        if (j.contains("finite_sample")) {
            const json& f = j.at("finite_sample");
            FiniteSampleSpec spec;
            if (f.contains("p")) {
                if (f.at("p").is_string()) {
                    std::string p = f.at("p").get<std::string>();
                    if (p == "inf" || p == "infinity") {
                        spec.p = std::numeric_limits<double>::infinity();
                    } else {
                        spec.p = std::stod(p);
                    }
                } else {
                    spec.p = f.at("p").get<double>();
                }
            }
            spec.W = f.value("W", 1.0);
            spec.n = f.value("n", long{1000});
            spec.trials = f.value("trials", long{1000});
            spec.noise_sigma = f.value("noise_sigma", 0.5);
            spec.clip_margin = f.value("clip_margin", 4.0);
            c.finite_sample = spec;
        }

        for (double pi : c.pi_values) {
            if (!(pi > 0.0 && pi < 1.0)) throw ConfigError("pi values must lie in (0,1)");
        }
        for (double eps : c.eps_values) {
            if (!(eps >= 0.0)) throw ConfigError("epsilon values must be >= 0");
        }
        if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        file >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["name"] = name;
    j["sweep"] = to_string(sweep);
    j["mu"] = std::vector<double>(mu.data(), mu.data() + mu.size());
    json sig = json::array();
    for (long r = 0; r < sigma.rows(); ++r) {
        json row = json::array();
        for (long c2 = 0; c2 < sigma.cols(); ++c2) row.push_back(sigma(r, c2));
        sig.push_back(row);
    }
    j["sigma"] = sig;
    j["pi_values"] = pi_values;
    j["eps_values"] = eps_values;
    if (!pi_grid.empty()) j["pi_grid"] = axis_to_json(pi_grid);
    if (!eps_grid.empty()) j["eps_grid"] = axis_to_json(eps_grid);
    j["tol"] = tol;
    j["seed"] = seed;
    j["out_dir"] = out_dir.string();
    j["emit_svg"] = emit_svg;
    if (!plot_y.empty()) j["plot_y"] = plot_y;
    if (finite_sample) {
        json f;
        f["p"] = std::isinf(finite_sample->p) ? json("inf") : json(finite_sample->p);
        f["W"] = finite_sample->W;
        f["n"] = finite_sample->n;
        f["trials"] = finite_sample->trials;
        f["noise_sigma"] = finite_sample->noise_sigma;
        f["clip_margin"] = finite_sample->clip_margin;
        j["finite_sample"] = f;
    }
    return j.dump(2);
}

std::string mixture_to_json_text(const model::GaussianMixture& mixture) {
    json j;
    j["mu"] = std::vector<double>(mixture.mu().data(), mixture.mu().data() + mixture.mu().size());
    json sig = json::array();
    for (long r = 0; r < mixture.sigma().rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < mixture.sigma().cols(); ++c) row.push_back(mixture.sigma()(r, c));
        sig.push_back(row);
    }
    j["sigma"] = sig;
    j["pi_plus"] = mixture.pi_plus();
    return j.dump(2);
}

model::GaussianMixture mixture_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("mixture parse error: ") + e.what());
    }
    auto mu_vec = j.at("mu").get<std::vector<double>>();
    Vector mu = Eigen::Map<const Vector>(mu_vec.data(), static_cast<long>(mu_vec.size()));
    const json& sig = j.at("sigma");
    Matrix sigma(static_cast<long>(sig.size()), static_cast<long>(sig.size()));
    for (size_t r = 0; r < sig.size(); ++r) {
        auto row = sig.at(r).get<std::vector<double>>();
        for (size_t c = 0; c < row.size(); ++c) {
            sigma(static_cast<long>(r), static_cast<long>(c)) = row[c];
        }
    }
    return model::GaussianMixture(mu, sigma, j.at("pi_plus").get<double>());
}

model::GaussianMixture ExperimentConfig::mixture(double pi_plus) const {
    return model::GaussianMixture(mu, sigma, pi_plus);
}

namespace {

using csv::format_double;
using csv::Table;

std::string regime_name(analysis::Regime r) {
    return r == analysis::Regime::surprising ? "surprising" : "standard";
}

Table run_pi_sweep(const ExperimentConfig& cfg) {
    if (cfg.pi_grid.empty()) throw ConfigError("pi_sweep needs a pi_grid");
    Table t;
    t.columns = {"eps", "pi_plus", "nat_risk_adv", "nat_risk_bayes", "gap",
                 "regime_label", "c", "d", "kkt_residual"};
    boxqp::SolveOptions opts;
    opts.tol = cfg.tol;
    for (double eps : cfg.eps_values) {
        auto mixture = cfg.mixture(0.5);  // weights do not depend on the prior
        model::ThreatModel threat(eps);
        auto adv = classifiers::adversarial_classifier(mixture, threat, opts);
        auto adv_curve = analysis::natural_risk_curve(adv.classifier, mixture);
        auto nat_curve =
            analysis::natural_risk_curve(classifiers::bayes_classifier(mixture), mixture);

        Vector u = mixture.mu() - eps * adv.qp.z_star;
        double c = 2.0 * mixture.mu().dot(mixture.sigma_inv(u));
        double d = 2.0 * mixture.mahalanobis(u);
        std::string label =
            adv.trivial ? "trivial"
                        : (c > d * d + 1e-10 * std::max({1.0, std::abs(c), d * d}) ? "surprising"
                                                                                   : "standard");

        const auto n = static_cast<long>(cfg.pi_grid.size());
        std::vector<std::array<double, 3>> vals(static_cast<size_t>(n));
        parallel::parallel_for(n, [&](long k) {
            double pi = cfg.pi_grid[static_cast<size_t>(k)];
            double ra = adv_curve.at(pi);
            double rn = nat_curve.at(pi);
            vals[static_cast<size_t>(k)] = {ra, rn, ra - rn};
        });
        for (long k = 0; k < n; ++k) {
            const auto& v = vals[static_cast<size_t>(k)];
            t.add_row({format_double(eps), format_double(cfg.pi_grid[static_cast<size_t>(k)]),
                       format_double(v[0]), format_double(v[1]), format_double(v[2]), label,
                       format_double(c), format_double(d), format_double(adv.qp.kkt_residual)});
        }
    }
    return t;
}

Table run_eps_sweep(const ExperimentConfig& cfg) {
    if (cfg.eps_grid.empty()) throw ConfigError("eps_sweep needs an eps_grid");
    Table t;
    t.columns = {"pi_plus", "eps", "gap", "nat_risk_adv", "nat_risk_bayes", "kkt_residual"};
    boxqp::SolveOptions opts;
    opts.tol = cfg.tol;

    const auto n_eps = static_cast<long>(cfg.eps_grid.size());
    auto base = cfg.mixture(0.5);
    std::vector<classifiers::AdversarialOptimum> solutions(static_cast<size_t>(n_eps));
    parallel::parallel_for(n_eps, [&](long k) {
        solutions[static_cast<size_t>(k)] = classifiers::adversarial_classifier(
            base, model::ThreatModel(cfg.eps_grid[static_cast<size_t>(k)]), opts);
    });
    auto nat_curve = analysis::natural_risk_curve(classifiers::bayes_classifier(base), base);

    for (double pi : cfg.pi_values) {
        for (long k = 0; k < n_eps; ++k) {
            const auto& adv = solutions[static_cast<size_t>(k)];
            auto adv_curve = analysis::natural_risk_curve(adv.classifier, base);
            double ra = adv_curve.at(pi);
            double rn = nat_curve.at(pi);
            t.add_row({format_double(pi), format_double(cfg.eps_grid[static_cast<size_t>(k)]),
                       format_double(ra - rn), format_double(ra), format_double(rn),
                       format_double(adv.qp.kkt_residual)});
        }
    }
    return t;
}

Table run_bounds(const ExperimentConfig& cfg) {
    if (cfg.eps_grid.empty()) throw ConfigError("bounds sweep needs an eps_grid");
    double pi = cfg.pi_values.front();
    auto mixture = cfg.mixture(pi);
    (void)analysis::gap_bound_terms(mixture);  // rejects imbalanced priors up front
    boxqp::SolveOptions opts;
    opts.tol = cfg.tol;

    bool diagonal = true;
    for (long r = 0; r < cfg.sigma.rows() && diagonal; ++r) {
        for (long c = 0; c < cfg.sigma.cols(); ++c) {
            if (r != c && std::abs(cfg.sigma(r, c)) > 1e-12) {
                diagonal = false;
                break;
            }
        }
    }
    const double eps_max = cfg.eps_grid.back();
    const bool with_lower = diagonal && mixture.mu().cwiseAbs().minCoeff() >= eps_max;

    Table t;
    t.columns = {"eps", "gap", "upper_phi_difference", "upper_precise", "upper_exponential"};
    if (with_lower) t.columns.push_back("lower_bound");

    const auto n = static_cast<long>(cfg.eps_grid.size());
    std::vector<std::vector<std::string>> rows(static_cast<size_t>(n));
    parallel::parallel_for(n, [&](long k) {
        double eps = cfg.eps_grid[static_cast<size_t>(k)];
        model::ThreatModel threat(eps);
        std::vector<std::string> row{
            format_double(eps), format_double(risk::gap(mixture, threat, opts)),
            format_double(
                analysis::gap_upper_bound(mixture, threat, analysis::UpperBoundForm::phi_difference)),
            format_double(
                analysis::gap_upper_bound(mixture, threat, analysis::UpperBoundForm::precise)),
            format_double(
                analysis::gap_upper_bound(mixture, threat, analysis::UpperBoundForm::exponential))};
        if (with_lower) row.push_back(format_double(analysis::gap_lower_bound(mixture, threat)));
        rows[static_cast<size_t>(k)] = std::move(row);
    });
    for (auto& row : rows) t.add_row(std::move(row));
    return t;
}

Table run_regime(const ExperimentConfig& cfg) {
    std::vector<double> pi_grid = cfg.pi_grid;
    if (pi_grid.empty()) pi_grid = make_grid(0.02, 0.98, 1e-3);
    Vector grid = Eigen::Map<const Vector>(pi_grid.data(), static_cast<long>(pi_grid.size()));

    Table t;
    t.columns = {"eps", "c", "d", "ratio", "risk_regime", "gap_regime",
                 "risk_maxima", "risk_min_at_half", "risk_max_at_half",
                 "gap_maxima", "gap_min_at_half", "gap_max_at_half", "symmetry_defect"};
    boxqp::SolveOptions opts;
    opts.tol = cfg.tol;
    auto mixture = cfg.mixture(0.5);
    for (double eps : cfg.eps_values) {
        model::ThreatModel threat(eps);
        auto rr = analysis::risk_regime(mixture, threat, opts);
        auto gr = analysis::gap_regime(mixture, threat, opts);
        auto ext_r = analysis::verify_regime_numerically(mixture, threat, grid,
                                                         analysis::RegimeQuantity::risk, opts);
        auto ext_g = analysis::verify_regime_numerically(mixture, threat, grid,
                                                         analysis::RegimeQuantity::gap, opts);
        t.add_row({format_double(eps), format_double(rr.params.c), format_double(rr.params.d),
                   format_double(rr.params.ratio), regime_name(rr.label), regime_name(gr.label),
                   std::to_string(ext_r.interior_maxima), std::to_string(ext_r.local_min_at_half),
                   std::to_string(ext_r.local_max_at_half), std::to_string(ext_g.interior_maxima),
                   std::to_string(ext_g.local_min_at_half), std::to_string(ext_g.local_max_at_half),
                   format_double(std::max(ext_r.symmetry_defect, ext_g.symmetry_defect))});
    }
    return t;
}

Table run_breakpoints(const ExperimentConfig& cfg, std::vector<boxqp::BreakpointBracket>* brackets) {
    if (cfg.eps_grid.empty()) throw ConfigError("breakpoints sweep needs an eps_grid");
    auto mixture = cfg.mixture(cfg.pi_values.front());
    boxqp::SolveOptions opts;
    opts.tol = cfg.tol;

    Table t;
    t.columns = {"eps", "gap", "objective", "kkt_residual", "active_set"};
    const auto n = static_cast<long>(cfg.eps_grid.size());
    std::vector<std::vector<std::string>> rows(static_cast<size_t>(n));
    parallel::parallel_for(n, [&](long k) {
        double eps = cfg.eps_grid[static_cast<size_t>(k)];
        model::ThreatModel threat(eps);
        auto sol = boxqp::solve_zstar(mixture, threat, opts);
        rows[static_cast<size_t>(k)] = {format_double(eps),
                                        format_double(risk::gap(mixture, threat, opts)),
                                        format_double(sol.objective),
                                        format_double(sol.kkt_residual),
                                        activity_string(sol.active_set)};
    });
    for (auto& row : rows) t.add_row(std::move(row));

    Vector grid = Eigen::Map<const Vector>(cfg.eps_grid.data(), static_cast<long>(cfg.eps_grid.size()));
    *brackets = boxqp::detect_breakpoints(mixture, grid, opts);
    return t;
}

Table run_finite_sample(const ExperimentConfig& cfg) {
    if (!cfg.finite_sample) throw ConfigError("finite_sample sweep needs a finite_sample block");
    const FiniteSampleSpec& spec = *cfg.finite_sample;
    const double eps = cfg.eps_values.front();
    const Vector& mu = cfg.mu;
    const int d = static_cast<int>(mu.size());
    const double A = mu.cwiseAbs().maxCoeff() + spec.clip_margin * spec.noise_sigma;
    const linearloss::LinearLossConstraint constraint(spec.W, spec.p);

    // Case selection mirrors the bound's applicability conditions.
    linearloss::HoeffdingCase which;
    int gap_index = -1;
    if (constraint.p == 1.0) {
        which = mu.cwiseAbs().maxCoeff() >= eps ? linearloss::HoeffdingCase::p1_equal
                                                : linearloss::HoeffdingCase::p1_gap;
    } else if (mu.cwiseAbs().minCoeff() >= eps) {
        which = linearloss::HoeffdingCase::pinf_equal;
    } else {
        which = linearloss::HoeffdingCase::pinf_gap;
        for (int i = 0; i < d; ++i) {
            if (mu[i] != 0.0 && std::abs(mu[i]) < eps) {
                gap_index = i;
                break;
            }
        }
    }
    auto report = linearloss::hoeffding_bound(mu, eps, spec.n, A, which, gap_index);

    std::vector<int> hits(static_cast<size_t>(spec.trials), 0);
    parallel::parallel_for(spec.trials, [&](long trial) {
        montecarlo::RngSpec rng{cfg.seed, static_cast<std::uint64_t>(trial)};
        Eigen::MatrixXd x(spec.n, d);
        Eigen::VectorXi y(spec.n);
        Eigen::VectorXd g(d);
        for (long i = 0; i < spec.n; ++i) {
            auto idx = static_cast<std::uint64_t>(i);
            int label = montecarlo::uniform_open01(rng, idx, 0) < 0.5 ? 1 : -1;
            montecarlo::standard_normal_fill(rng, idx, g);
            y[i] = label;
            x.row(i) = (static_cast<double>(label) * mu + spec.noise_sigma * g)
                           .cwiseMax(-A)
                           .cwiseMin(A)
                           .transpose();
        }
        auto samples = linearloss::SampleSet::from_data(std::move(x), std::move(y));
        Eigen::VectorXd w_adv = linearloss::train_finite_sample(samples, constraint, eps);
        Eigen::VectorXd w_nat = linearloss::train_finite_sample(samples, constraint, 0.0);
        bool hit = false;
        switch (which) {
            case linearloss::HoeffdingCase::p1_equal:
            case linearloss::HoeffdingCase::pinf_equal:
                hit = (w_adv - w_nat).cwiseAbs().maxCoeff() <= 1e-12;
                break;
            case linearloss::HoeffdingCase::p1_gap:
                hit = std::abs(linearloss::linear_loss_risk(w_adv, mu, 0.0) -
                               linearloss::linear_loss_risk(w_nat, mu, 0.0) -
                               spec.W * mu.cwiseAbs().maxCoeff()) <= 1e-9;
                break;
            case linearloss::HoeffdingCase::pinf_gap:
                hit = linearloss::linear_loss_risk(w_adv, mu, 0.0) -
                          linearloss::linear_loss_risk(w_nat, mu, 0.0) >=
                      spec.W * std::abs(mu[gap_index]) - 1e-12;
                break;
        }
        hits[static_cast<size_t>(trial)] = hit ? 1 : 0;
    });
    long total = 0;
    for (int h : hits) total += h;
    double freq = static_cast<double>(total) / static_cast<double>(spec.trials);

    Table t;
    t.columns = {"case", "p", "W", "eps", "n", "trials", "A",
                 "bound", "raw_bound", "observed_freq", "freq_minus_bound"};
    const char* case_name =
        which == linearloss::HoeffdingCase::p1_equal     ? "p1_equal"
        : which == linearloss::HoeffdingCase::p1_gap     ? "p1_gap"
        : which == linearloss::HoeffdingCase::pinf_equal ? "pinf_equal"
                                                         : "pinf_gap";
    t.add_row({case_name, std::isinf(spec.p) ? "inf" : format_double(spec.p),
               format_double(spec.W), format_double(eps), std::to_string(spec.n),
               std::to_string(spec.trials), format_double(A), format_double(report.bound),
               format_double(report.raw_bound), format_double(freq),
               format_double(freq - report.bound)});
    return t;
}

}  // namespace

std::string render_plot(const ExperimentConfig& config, const std::filesystem::path& csv_path) {
    Table t = Table::read(csv_path);
    std::vector<svg::Series> series;
    svg::PlotSpec spec;
    spec.title = config.name;

    auto split_by = [&](const std::string& key_col, const std::string& x_col,
                        const std::string& y_col, const std::string& prefix) {
        auto keys = t.numeric_column(key_col);
        auto xs = t.numeric_column(x_col);
        auto ys = t.numeric_column(y_col);
        std::map<double, svg::Series> grouped;
        for (size_t i = 0; i < xs.size(); ++i) {
            auto& s = grouped[keys[i]];
            if (s.points.empty()) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%s=%g", prefix.c_str(), keys[i]);
                s.label = buf;
            }
            s.points.emplace_back(xs[i], ys[i]);
        }
        for (auto& [k, s] : grouped) series.push_back(std::move(s));
        spec.x_label = x_col;
        spec.y_label = y_col;
    };

    switch (config.sweep) {
        case SweepKind::pi_sweep:
            split_by("eps", "pi_plus", config.plot_y.empty() ? "nat_risk_adv" : config.plot_y,
                     "eps");
            break;
        case SweepKind::eps_sweep:
            split_by("pi_plus", "eps", config.plot_y.empty() ? "gap" : config.plot_y, "pi");
            break;
        case SweepKind::bounds: {
            auto xs = t.numeric_column("eps");
            for (const auto& col : t.columns) {
                if (col == "eps") continue;
                auto ys = t.numeric_column(col);
                svg::Series s;
                s.label = col;
                for (size_t i = 0; i < xs.size(); ++i) s.points.emplace_back(xs[i], ys[i]);
                series.push_back(std::move(s));
            }
            spec.x_label = "eps";
            spec.y_label = "gap / bounds";
            break;
        }
        case SweepKind::breakpoints: {
            auto xs = t.numeric_column("eps");
            auto ys = t.numeric_column("gap");
            svg::Series s;
            s.label = "gap";
            for (size_t i = 0; i < xs.size(); ++i) s.points.emplace_back(xs[i], ys[i]);
            series.push_back(std::move(s));
            auto brackets_path = csv_path;
            brackets_path.replace_filename(csv_path.stem().string() + "_breakpoints.csv");
            if (std::filesystem::exists(brackets_path)) {
                Table b = Table::read(brackets_path);
                auto lo = b.numeric_column("eps_lo");
                auto hi = b.numeric_column("eps_hi");
                for (size_t i = 0; i < lo.size(); ++i) {
                    spec.vertical_markers.push_back(0.5 * (lo[i] + hi[i]));
                }
            }
            spec.x_label = "eps";
            spec.y_label = "gap";
            break;
        }
        default:
            return "";
    }
    return svg::line_plot(spec, series);
}

RunResult run(const ExperimentConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    RunResult result;
    std::ostringstream summary;
    summary << "sweep " << to_string(config.sweep) << " (" << config.name << ")\n";

    Table table;
    std::vector<boxqp::BreakpointBracket> brackets;
    switch (config.sweep) {
        case SweepKind::pi_sweep: table = run_pi_sweep(config); break;
        case SweepKind::eps_sweep: table = run_eps_sweep(config); break;
        case SweepKind::regime: table = run_regime(config); break;
        case SweepKind::bounds: table = run_bounds(config); break;
        case SweepKind::finite_sample: table = run_finite_sample(config); break;
        case SweepKind::breakpoints: table = run_breakpoints(config, &brackets); break;
    }

    auto csv_path = config.out_dir / (config.name + ".csv");
    table.write(csv_path);
    result.artifacts.push_back(csv_path);
    summary << "  wrote " << csv_path.string() << " (" << table.rows.size() << " rows)\n";

    if (config.sweep == SweepKind::breakpoints) {
        Table bt;
        bt.columns = {"eps_lo", "eps_hi", "change"};
        for (const auto& b : brackets) {
            bt.add_row({format_double(b.eps_lo), format_double(b.eps_hi), b.change});
        }
        auto bpath = config.out_dir / (config.name + "_breakpoints.csv");
        bt.write(bpath);
        result.artifacts.push_back(bpath);
        summary << "  " << brackets.size() << " active-set change bracket(s)\n";
        for (const auto& b : brackets) {
            summary << "    eps in [" << format_double(b.eps_lo) << ", " << format_double(b.eps_hi)
                    << "]: " << b.change << "\n";
        }
    }

    if (config.emit_svg) {
        std::string svg_text = render_plot(config, csv_path);
        if (!svg_text.empty()) {
            auto svg_path = config.out_dir / (config.name + ".svg");
            std::ofstream out(svg_path, std::ios::binary);
            out << svg_text;
            if (!out) throw Error("cannot write " + svg_path.string());
            result.artifacts.push_back(svg_path);
            summary << "  wrote " << svg_path.string() << "\n";
        }
    }

    if (config.sweep == SweepKind::regime || config.sweep == SweepKind::finite_sample) {
        for (size_t c = 0; c < table.columns.size(); ++c) summary << (c ? "," : "  ") << table.columns[c];
        summary << "\n";
        for (const auto& row : table.rows) {
            for (size_t c = 0; c < row.size(); ++c) summary << (c ? "," : "  ") << row[c];
            summary << "\n";
        }
    }
    result.summary = summary.str();
    return result;
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig2", "fig3", "fig4a", "fig4b", "fig5", "fig6"};
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.name = name;
    c.seed = 20210607;

    auto diag3 = [](double v) {
        Matrix s = Matrix::Zero(3, 3);
        s.diagonal().setConstant(v);
        return s;
    };
    auto vec = [](std::initializer_list<double> vals) {
        Vector v(static_cast<long>(vals.size()));
        long i = 0;
        for (double x : vals) v[i++] = x;
        return v;
    };

    if (name == "fig1" || name == "fig3") {
        c.sweep = SweepKind::pi_sweep;
        c.mu = vec({1.5, 2.0, 4.0});
        c.sigma = diag3(3.0);
        c.eps_values = {1.0, 1.5, 2.0, 2.5};
        c.pi_grid = make_grid(0.02, 0.98, 1e-3);
        if (name == "fig3") c.plot_y = "gap";
        return c;
    }
    if (name == "fig2") {
        c.sweep = SweepKind::pi_sweep;
        c.mu = vec({2.0, 1.0, 3.0});
        c.sigma.resize(3, 3);
        c.sigma << 2.0, 1.0, 1.0, 1.0, 2.0, 1.5, 1.0, 1.5, 3.0;
        c.eps_values = {1.0, 1.5, 2.0, 2.5};
        c.pi_grid = make_grid(0.02, 0.98, 1e-3);
        return c;
    }
    if (name == "fig4a") {
        c.sweep = SweepKind::bounds;
        c.mu = vec({1.5, 2.0, 4.0});
        c.sigma = diag3(3.0);
        c.pi_values = {0.5};
        c.eps_grid = make_grid(0.0, 1.48, 0.02);  // eps_limit_A ~ 1.4833, min|mu_i| = 1.5
        return c;
    }
    if (name == "fig4b") {
        c.sweep = SweepKind::bounds;
        c.mu = vec({1.0, 1.0, 1.5});
        c.sigma.resize(3, 3);
        c.sigma << 2.0, 0.5, 1.0, 0.5, 2.0, 1.5, 1.0, 1.5, 4.0;
        c.pi_values = {0.5};
        c.eps_grid = make_grid(0.0, 0.55, 0.01);  // eps_limit_A ~ 0.5586
        return c;
    }
    if (name == "fig5") {
        c.sweep = SweepKind::breakpoints;
        c.mu = vec({1.0, 2.0, 3.0, 3.4});
        c.sigma.resize(4, 4);
        c.sigma << 3, 1, 1, 0, 1, 3, 0, 0, 1, 0, 3, 1, 0, 0, 1, 3;
        c.pi_values = {0.5};
        c.eps_grid = make_grid(0.0, 3.0, 0.05);
        return c;
    }
    if (name == "fig6") {
        c.sweep = SweepKind::eps_sweep;
        c.mu = vec({1.0, 2.0, 3.0});
        c.sigma.resize(3, 3);
        c.sigma << 3, 1, 1, 1, 3, 0, 1, 0, 3;
        c.pi_values = {0.5, 0.6, 0.7, 0.8};
        c.eps_grid = make_grid(0.0, 2.95, 0.05);
        return c;
    }
    throw ConfigError("unknown preset: " + name + " (available: fig1 fig2 fig3 fig4a fig4b fig5 fig6)");
}

}  // namespace robustmix::experiment
