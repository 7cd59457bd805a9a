// Acceptance suite: end-to-end checks of the library against independently
// derived reference values (see tests/reference_phi.hpp for the test-side
// Phi oracle) and the published small-dimension experiments. Prints one
// PASS/FAIL line per criterion; the exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reference_phi.hpp"
#include "robustmix/analysis.hpp"
#include "robustmix/boxqp.hpp"
#include "robustmix/classifiers.hpp"
#include "robustmix/experiment.hpp"
#include "robustmix/linearloss.hpp"
#include "robustmix/montecarlo.hpp"
#include "robustmix/risk.hpp"
#include "test_helpers.hpp"

using namespace robustmix;
using model::Matrix;
using model::Vector;

namespace {

struct Harness {
    int failures = 0;

    void run(int number, const std::string& name, double time_limit_s,
             const std::function<bool(std::ostringstream&)>& body) {
        std::ostringstream detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail << " exception: " << e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > time_limit_s) {
            ok = false;
            detail << " [exceeded " << time_limit_s << " s budget]";
        }
        std::printf("%s  criterion %d  %-24s (%6.2f s)%s\n", ok ? "PASS" : "FAIL", number,
                    name.c_str(), elapsed, detail.str().c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

model::GaussianMixture paper_mixture(double pi = 0.5) {
    return model::GaussianMixture(vec3(1.5, 2.0, 4.0), 3.0 * Matrix::Identity(3, 3), pi);
}

bool check(std::ostringstream& out, bool cond, const char* what) {
    if (!cond) out << " [" << what << "]";
    return cond;
}

// --- criterion 1: regime labels with c, d arithmetic ------------------------

bool criterion_regimes(std::ostringstream& out) {
    bool ok = true;
    auto mix = paper_mixture();
    auto r15 = analysis::risk_regime(mix, model::ThreatModel(1.5));
    auto r25 = analysis::risk_regime(mix, model::ThreatModel(2.5));
    ok &= check(out, r15.label == analysis::Regime::standard, "eps=1.5 must be standard");
    ok &= check(out, r25.label == analysis::Regime::surprising, "eps=2.5 must be surprising");
    ok &= check(out, std::abs(r15.params.c - 22.0 / 3.0) <= 1e-8, "c(1.5) = 22/3");
    ok &= check(out, std::abs(r15.params.d * r15.params.d - 26.0 / 3.0) <= 1e-8, "d^2(1.5) = 26/3");
    ok &= check(out, std::abs(r25.params.c - 4.0) <= 1e-8, "c(2.5) = 4");
    ok &= check(out, std::abs(r25.params.d * r25.params.d - 3.0) <= 1e-8, "d^2(2.5) = 3");
    out << " labels standard/surprising with c,d cross-checked";
    return ok;
}

// --- criterion 2: figure-1 curve shapes --------------------------------------

bool criterion_fig1_shape(std::ostringstream& out) {
    bool ok = true;
    auto grid_values = experiment::make_grid(0.02, 0.98, 1e-3);
    Vector grid =
        Eigen::Map<const Vector>(grid_values.data(), static_cast<long>(grid_values.size()));
    auto mix = paper_mixture();

    auto shape25 = analysis::verify_regime_numerically(mix, model::ThreatModel(2.5), grid,
                                                       analysis::RegimeQuantity::risk);
    ok &= check(out, shape25.interior_maxima == 2, "eps=2.5 needs exactly two interior maxima");
    ok &= check(out, shape25.local_min_at_half, "eps=2.5 needs a local minimum at pi=1/2");

    auto shape10 = analysis::verify_regime_numerically(mix, model::ThreatModel(1.0), grid,
                                                       analysis::RegimeQuantity::risk);
    ok &= check(out, shape10.interior_maxima == 1, "eps=1 needs a single maximum");
    ok &= check(out, shape10.local_max_at_half, "eps=1 maximum must sit at pi=1/2");
    out << " eps=2.5: " << shape25.interior_maxima << " maxima with min at 1/2; eps=1: single max";
    return ok;
}

// --- criterion 3: gap-bound sandwich ------------------------------------------

bool criterion_bound_sandwich(std::ostringstream& out) {
    bool ok = true;
    auto mix = paper_mixture();
    model::ThreatModel threat(1.0);

    // Frozen oracle values from the reference Phi and closed formulas at
    // mu = (1.5,2,4), Sigma = 3I, eps = 1: m^2 = 22.25/3, C = 3.5/22.25.
    const double gap_expected = 6.7677652651589336e-4;
    const double lower_expected = 1.8832750642609050e-4;
    const double expo_expected = 1.8236711775254238e-2;

    double gap = risk::gap(mix, threat);
    double lower = analysis::gap_lower_bound(mix, threat);
    double phid = analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::phi_difference);
    double prec = analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::precise);
    double expo = analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::exponential);

    ok &= check(out, std::abs(gap - 6.78e-4) <= 1e-5, "gap ~ 6.78e-4 (tol 1e-5)");
    ok &= check(out, std::abs(gap / gap_expected - 1.0) <= 1e-6, "gap vs oracle value");
    ok &= check(out, std::abs(lower / lower_expected - 1.0) <= 1e-6, "lower vs oracle (1e-6 rel)");
    ok &= check(out, std::abs(expo / expo_expected - 1.0) <= 1e-6,
                "exponential vs oracle (1e-6 rel)");
    ok &= check(out, std::abs(lower - 1.883e-4) <= 1e-7, "lower rounds to 1.883e-4");
    ok &= check(out, std::abs(expo - 1.823e-2) <= 1e-4, "exponential ~ 1.823e-2");

    // Chain ordering as proved: the Phi difference sits below its tangent
    // ("precise") form by convexity, which the exponential form dominates.
    ok &= check(out, lower <= gap + 1e-12 && gap <= phid + 1e-12, "lower <= gap <= phi_difference");
    ok &= check(out, phid <= prec + 1e-12 && prec <= expo + 1e-12,
                "phi_difference <= precise <= exponential");

    // Property version across 200 random diagonal balanced instances.
    std::mt19937_64 rng(930);
    std::uniform_real_distribution<double> mu_dist(0.8, 2.5);
    std::uniform_int_distribution<int> coin(0, 1);
    int checked = 0;
    while (checked < 200 && ok) {
        int d = 2 + static_cast<int>(rng() % 3);
        Vector mu(d);
        for (int i = 0; i < d; ++i) mu[i] = (coin(rng) ? 1.0 : -1.0) * mu_dist(rng);
        auto inst = model::GaussianMixture(mu, testgen::random_diag_spd(rng, d, 0.6, 3.0), 0.5);
        auto terms = analysis::gap_bound_terms(inst);
        double cap = std::min({terms.eps_limit_A, terms.eps_limit_B, mu.cwiseAbs().minCoeff()});
        if (!(cap > 0.05)) continue;
        std::uniform_real_distribution<double> eps_dist(0.05, cap * 0.999);
        model::ThreatModel t(eps_dist(rng));
        double l = analysis::gap_lower_bound(inst, t);
        double g = risk::gap(inst, t);
        double pd = analysis::gap_upper_bound(inst, t, analysis::UpperBoundForm::phi_difference);
        double pr = analysis::gap_upper_bound(inst, t, analysis::UpperBoundForm::precise);
        double ex = analysis::gap_upper_bound(inst, t, analysis::UpperBoundForm::exponential);
        ok &= check(out,
                    l <= g + 1e-12 && g <= pd + 1e-12 && pd <= pr + 1e-12 && pr <= ex + 1e-12,
                    "sandwich failed on a random instance");
        ++checked;
    }
    out << " values + ordering on the reference instance and " << checked << " random instances";
    return ok;
}

// --- criterion 4: box-QP oracle equivalence -----------------------------------

bool criterion_boxqp_oracles(std::ostringstream& out) {
    bool ok = true;
    std::mt19937_64 rng(940);
    std::uniform_real_distribution<double> eps_dist(0.0, 4.0);
    double worst_diag = 0.0, worst_kkt = 0.0;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        int d = 1 + static_cast<int>(rng() % 6);
        Vector mu = testgen::random_vector(rng, d);
        Matrix sigma = testgen::random_diag_spd(rng, d);
        auto mix = model::GaussianMixture(mu, sigma, 0.5);
        double eps = eps_dist(rng);
        auto sol = boxqp::solve_zstar(mix, model::ThreatModel(eps), 1e-10);
        double diff =
            (sol.z_star - boxqp::diagonal_zstar(mu, sigma.diagonal(), eps)).cwiseAbs().maxCoeff();
        worst_diag = std::max(worst_diag, diff);
        worst_kkt = std::max(worst_kkt, sol.kkt_residual);
        ok &= check(out, diff <= 1e-7, "diagonal oracle mismatch");
        ok &= check(out, sol.kkt_residual <= 1e-8, "kkt residual above 1e-8");
    }
    std::uniform_real_distribution<double> eps_dense(0.05, 3.0);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        int d = 1 + static_cast<int>(rng() % 3);
        auto mix = testgen::random_mixture(rng, d);
        model::ThreatModel threat(eps_dense(rng));
        auto sol = boxqp::solve_zstar(mix, threat, 1e-10);
        Vector gz = boxqp::grid_oracle_zstar(mix, threat, d == 3 ? 41 : 201);
        double grid_obj = std::pow(mix.mahalanobis(mix.mu() - threat.epsilon * gz), 2);
        worst_kkt = std::max(worst_kkt, sol.kkt_residual);
        ok &= check(out, sol.objective <= grid_obj + 1e-9, "solver lost to the grid oracle");
        ok &= check(out, sol.kkt_residual <= 1e-8, "kkt residual above 1e-8");
    }
    out << " max |solver - diagonal oracle| = " << worst_diag << ", max kkt = " << worst_kkt;
    return ok;
}

// --- criterion 5: Monte Carlo oracle ------------------------------------------

bool criterion_monte_carlo(std::ostringstream& out) {
    bool ok = true;
    std::mt19937_64 rng(950);
    std::uniform_real_distribution<double> eps_dist(0.0, 1.2);
    double worst_sigmas = 0.0;
    int done = 0;
    for (std::uint64_t trial = 0; done < 50 && ok; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        auto mix = testgen::random_mixture(rng, d, false);
        auto clf = testgen::random_classifier(rng, d);
        model::ThreatModel threat(eps_dist(rng));
        auto exact = risk::adversarial_risk(clf, mix, threat);
        if (exact.adversarial_risk < 1e-3 || exact.adversarial_risk > 0.999) {
            continue;  // keep the binomial error model meaningful
        }
        auto est = montecarlo::empirical_adversarial_risk(clf, mix, threat, 1000000,
                                                          montecarlo::RngSpec{trial, 17});
        double sigmas =
            std::abs(est.estimate - exact.adversarial_risk) / std::max(est.std_error, 1e-12);
        worst_sigmas = std::max(worst_sigmas, sigmas);
        ok &= check(out, sigmas <= 4.0, "empirical estimate beyond 4 standard errors");
        ++done;
    }
    out << " 50 triples at n=1e6, worst deviation " << worst_sigmas << " standard errors";
    return ok;
}

// --- criterion 6: breakpoint reproduction -------------------------------------

bool criterion_breakpoints(std::ostringstream& out) {
    bool ok = true;
    auto cfg = experiment::preset("fig5");
    auto mix = cfg.mixture(0.5);
    Vector grid =
        Eigen::Map<const Vector>(cfg.eps_grid.data(), static_cast<long>(cfg.eps_grid.size()));
    auto brackets = boxqp::detect_breakpoints(mix, grid);
    ok &= check(out, brackets.size() == 3, "expected exactly three brackets");
    if (ok) {
        ok &= check(out, brackets[0].eps_lo > 0.0 && brackets[0].eps_hi < 0.5,
                    "first bracket inside (0, 0.5)");
        ok &= check(out, brackets[1].eps_lo <= 2.0 && 2.0 <= brackets[1].eps_hi,
                    "second bracket must contain 2.0");
        ok &= check(out, brackets[2].eps_lo > 2.5 && brackets[2].eps_hi < 3.0 + 1e-12,
                    "third bracket inside (2.5, 3.0)");
        out << " brackets [" << brackets[0].eps_lo << "," << brackets[0].eps_hi << "] ["
            << brackets[1].eps_lo << "," << brackets[1].eps_hi << "] [" << brackets[2].eps_lo
            << "," << brackets[2].eps_hi << "]";
    }
    return ok;
}

// --- criterion 7: no-tradeoff equivalence -------------------------------------

bool criterion_no_tradeoff(std::ostringstream& out) {
    bool ok = true;
    std::mt19937_64 rng(970);
    std::uniform_real_distribution<double> c_dist(1.0, 3.0);
    std::uniform_int_distribution<int> coin(0, 1);

    for (int trial = 0; trial < 100 && ok; ++trial) {
        int d = 2 + static_cast<int>(rng() % 4);
        double c = c_dist(rng);
        Vector mu(d);
        for (int i = 0; i < d; ++i) mu[i] = (coin(rng) ? 1.0 : -1.0) * c;
        if (d > 2 && trial % 3 == 0) mu[d - 1] = 0.0;  // exercise the zero-support branch
        auto mix = model::GaussianMixture(mu, testgen::random_diag_spd(rng, d), 0.5);
        model::ThreatModel threat(0.8 * c);
        auto rep = classifiers::no_tradeoff_check(mix, threat);
        ok &= check(out, rep.equivalent, "constructed instance must satisfy the condition");

        auto bayes = classifiers::bayes_classifier(mix);
        auto adv = classifiers::adversarial_classifier(mix, threat);
        Vector nb = bayes.w / bayes.w.norm();
        Vector na = adv.classifier.w / adv.classifier.w.norm();
        ok &= check(out, (nb - na).cwiseAbs().maxCoeff() <= 1e-6, "weights not parallel");
        ok &= check(out, risk::gap(mix, threat) <= 1e-12, "gap above 1e-12");
    }

    std::uniform_real_distribution<double> bump(1.15, 1.6);
    int violated = 0;
    for (int trial = 0; trial < 300 && violated < 100 && ok; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        Vector mu(d);
        for (int i = 0; i < d; ++i) mu[i] = (coin(rng) ? 1.0 : -1.0) * 1.2;
        mu[static_cast<long>(rng() % d)] *= bump(rng);
        auto mix = model::GaussianMixture(mu, testgen::random_diag_spd(rng, d, 0.8, 2.0), 0.5);
        if (mix.mahalanobis(mu) > 6.0) continue;
        model::ThreatModel threat(0.6);
        auto rep = classifiers::no_tradeoff_check(mix, threat);
        ok &= check(out, !rep.equivalent, "perturbed instance slipped through the check");
        ok &= check(out, risk::gap(mix, threat) > 0.0, "violating instance with zero gap");
        ++violated;
    }
    ok &= check(out, violated == 100, "needed 100 violating instances");
    out << " 100 satisfying + " << violated << " violating instances";
    return ok;
}

// --- criterion 8: finite-sample probability bounds ----------------------------

bool criterion_hoeffding(std::ostringstream& out) {
    bool ok = true;
    Vector mu = vec3(1.0, -1.2, 0.9);
    const double eps = 0.4, noise = 0.5;
    const double clip = mu.cwiseAbs().maxCoeff() + 4.0 * noise;
    const double tau = mu.cwiseAbs().minCoeff() - eps;
    // Smallest n with 1 - 2d exp(-n tau^2 / (2 A^2)) >= 0.99.
    const long n = static_cast<long>(
        std::ceil(2.0 * clip * clip * std::log(2.0 * 3.0 / 0.01) / (tau * tau)));
    auto report =
        linearloss::hoeffding_bound(mu, eps, n, clip, linearloss::HoeffdingCase::pinf_equal);
    ok &= check(out, report.bound >= 0.99, "bound must reach 0.99");

    const long trials = 1000;
    linearloss::LinearLossConstraint constraint(1.0, std::numeric_limits<double>::infinity());
    long hits = 0;
    Eigen::VectorXd g(3);
    for (long t = 0; t < trials; ++t) {
        montecarlo::RngSpec rng{20210608, static_cast<std::uint64_t>(t)};
        Eigen::MatrixXd x(n, 3);
        Eigen::VectorXi y(n);
        for (long i = 0; i < n; ++i) {
            auto idx = static_cast<std::uint64_t>(i);
            int label = montecarlo::uniform_open01(rng, idx, 0) < 0.5 ? 1 : -1;
            montecarlo::standard_normal_fill(rng, idx, g);
            y[i] = label;
            x.row(i) = (static_cast<double>(label) * mu + noise * g)
                           .cwiseMax(-clip)
                           .cwiseMin(clip)
                           .transpose();
        }
        auto samples = linearloss::SampleSet::from_data(std::move(x), std::move(y));
        Eigen::VectorXd w_adv = linearloss::train_finite_sample(samples, constraint, eps);
        Eigen::VectorXd w_nat = linearloss::train_finite_sample(samples, constraint, 0.0);
        if ((w_adv - w_nat).cwiseAbs().maxCoeff() <= 1e-12) ++hits;
    }
    double freq = static_cast<double>(hits) / static_cast<double>(trials);
    double floor = 0.99 - 3.0 * std::sqrt(0.99 * 0.01 / static_cast<double>(trials));
    ok &= check(out, freq >= floor, "equality frequency under the bound");
    out << " n = " << n << ", bound = " << report.bound << ", observed " << freq << " >= " << floor;
    return ok;
}

// --- criterion 9: invariant suite ---------------------------------------------

bool criterion_invariants(std::ostringstream& out) {
    bool ok = true;
    std::mt19937_64 rng(990);
    std::uniform_real_distribution<double> eps_frac(0.05, 0.95);

    int surprising = 0;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        int d = 2 + static_cast<int>(rng() % 4);
        auto mix = testgen::random_mixture(rng, d);
        double sup = mix.mu().cwiseAbs().maxCoeff();
        model::ThreatModel threat(eps_frac(rng) * sup);

        auto params = analysis::regime_params(mix, threat);
        ok &= check(out, params.ratio >= 0.5 - 1e-10, "c/d^2 below 1/2");
        ok &= check(out, analysis::gap_bound_terms(mix).C_sigma_mu >= 0.0, "negative C");
        ok &= check(out, risk::gap(mix, threat) >= 0.0, "negative gap");

        auto rr = analysis::risk_regime(mix, threat);
        auto gr = analysis::gap_regime(mix, threat);
        if (rr.label == analysis::Regime::surprising) {
            ++surprising;
            ok &= check(out, gr.label == analysis::Regime::surprising,
                        "risk-surprising without gap-surprising");
        }
    }

    std::uniform_real_distribution<double> x_dist(-6.0, 6.0);
    const double h = 1e-5;
    for (int i = 0; i < 200 && ok; ++i) {
        double x = x_dist(rng);
        double fd = (numerics::std_normal_cdf(x + h) - numerics::std_normal_cdf(x - h)) / (2 * h);
        ok &= check(out, std::abs(fd - numerics::std_normal_pdf(x)) <= 1e-6,
                    "Phi/phi finite-difference mismatch");
    }
    out << " 200 mixtures (" << surprising << " surprising) + 200 Phi/phi points, zero failures";
    return ok;
}

}  // namespace

int main() {
    Harness h;
    std::printf("robustmix acceptance suite\n");
    h.run(1, "regime-reproduction", 1.0, criterion_regimes);
    h.run(2, "figure-1-shape", 30.0, criterion_fig1_shape);
    h.run(3, "gap-bound-sandwich", 10.0, criterion_bound_sandwich);
    h.run(4, "box-qp-oracles", 60.0, criterion_boxqp_oracles);
    h.run(5, "monte-carlo-oracle", 300.0, criterion_monte_carlo);
    h.run(6, "breakpoint-reproduction", 60.0, criterion_breakpoints);
    h.run(7, "no-tradeoff-equivalence", 30.0, criterion_no_tradeoff);
    h.run(8, "hoeffding-empirical", 120.0, criterion_hoeffding);
    h.run(9, "invariant-suite", 60.0, criterion_invariants);
    if (h.failures == 0) {
        std::printf("all 9 acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criterion(s) FAILED\n", h.failures);
    }
    return h.failures;
}
