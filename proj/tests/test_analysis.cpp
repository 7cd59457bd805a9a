#include <cmath>
#include <random>

#include <doctest.h>

#include "reference_phi.hpp"
#include "robustmix/analysis.hpp"
#include "robustmix/risk.hpp"
#include "test_helpers.hpp"

using namespace robustmix;
using model::Matrix;
using model::Vector;

namespace {

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

model::GaussianMixture paper_mixture(double pi = 0.5) {
    return model::GaussianMixture(vec3(1.5, 2.0, 4.0), 3.0 * Matrix::Identity(3, 3), pi);
}

Vector symmetric_pi_grid(double step) {
    long n = static_cast<long>(std::llround((0.98 - 0.02) / step)) + 1;
    Vector grid(n);
    for (long k = 0; k < n; ++k) grid[k] = 0.02 + static_cast<double>(k) * step;
    return grid;
}

}  // namespace

TEST_CASE("regime params on the reference instance") {
    auto p15 = analysis::regime_params(paper_mixture(), model::ThreatModel(1.5));
    CHECK(p15.c == doctest::Approx(22.0 / 3.0).epsilon(1e-8));
    CHECK(p15.d * p15.d == doctest::Approx(26.0 / 3.0).epsilon(1e-8));
    CHECK(p15.ratio == doctest::Approx(22.0 / 26.0).epsilon(1e-8));

    auto p25 = analysis::regime_params(paper_mixture(), model::ThreatModel(2.5));
    CHECK(p25.c == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(p25.d * p25.d == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(p25.ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-8));

    auto p0 = analysis::regime_params(paper_mixture(), model::ThreatModel(0.0));
    CHECK(std::abs(p0.ratio - 0.5) <= 1e-10);

    CHECK_THROWS_AS(analysis::regime_params(paper_mixture(), model::ThreatModel(4.0)),
                    ApplicabilityError);
}

TEST_CASE("risk regime labels") {
    auto r15 = analysis::risk_regime(paper_mixture(), model::ThreatModel(1.5));
    CHECK(r15.label == analysis::Regime::standard);
    CHECK_FALSE(r15.near_boundary);

    auto r25 = analysis::risk_regime(paper_mixture(), model::ThreatModel(2.5));
    CHECK(r25.label == analysis::Regime::surprising);

    // Diagonal Sigma with equal magnitudes: eps > |mu|/2 suffices.
    Vector mu(3);
    mu << 2.0, -2.0, 2.0;
    Matrix sigma = Matrix::Zero(3, 3);
    sigma.diagonal() << 1.0, 2.0, 3.0;
    auto mix = model::GaussianMixture(mu, sigma, 0.5);
    CHECK(analysis::risk_regime(mix, model::ThreatModel(1.2)).label ==
          analysis::Regime::surprising);
    CHECK(analysis::risk_regime(mix, model::ThreatModel(0.8)).label ==
          analysis::Regime::standard);
}

TEST_CASE("gap regime labels") {
    auto g25 = analysis::gap_regime(paper_mixture(), model::ThreatModel(2.5));
    CHECK(g25.label == analysis::Regime::surprising);
    CHECK(g25.condition_lhs > 0.0);
    CHECK(g25.condition_rhs < 0.0);

    auto g0 = analysis::gap_regime(paper_mixture(), model::ThreatModel(0.0));
    CHECK(g0.label == analysis::Regime::standard);
    CHECK(g0.near_boundary);  // both sides coincide exactly at eps = 0

    // Equal-magnitude diagonal case: the gap condition holds for every budget.
    Vector mu(3);
    mu << 2.0, -2.0, 2.0;
    Matrix sigma = Matrix::Zero(3, 3);
    sigma.diagonal() << 1.0, 2.0, 3.0;
    auto mix = model::GaussianMixture(mu, sigma, 0.5);
    for (double eps : {0.3, 0.8, 1.2, 1.9}) {
        CHECK(analysis::gap_regime(mix, model::ThreatModel(eps)).label ==
              analysis::Regime::surprising);
    }
}

TEST_CASE("surprising risk regime implies surprising gap regime") {
    std::mt19937_64 rng(601);
    std::uniform_real_distribution<double> eps_frac(0.1, 0.95);
    int surprising_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        auto mix = testgen::random_mixture(rng, d);
        double sup = mix.mu().cwiseAbs().maxCoeff();
        model::ThreatModel threat(eps_frac(rng) * sup);
        auto rr = analysis::risk_regime(mix, threat);
        auto gr = analysis::gap_regime(mix, threat);  // throws on implication failure
        if (rr.label == analysis::Regime::surprising) {
            ++surprising_seen;
            CHECK(gr.label == analysis::Regime::surprising);
        }
        CHECK(rr.params.ratio >= 0.5 - 1e-10);  // c/d^2 lower bound
    }
    CHECK(surprising_seen > 0);
}

TEST_CASE("extrema counting matches the regime labels") {
    Vector grid = symmetric_pi_grid(1e-3);

    auto surprising = analysis::verify_regime_numerically(
        paper_mixture(), model::ThreatModel(2.5), grid, analysis::RegimeQuantity::risk);
    CHECK(surprising.interior_maxima == 2);
    CHECK(surprising.local_min_at_half);
    CHECK_FALSE(surprising.local_max_at_half);
    CHECK(surprising.symmetry_defect <= 1e-10);

    auto standard = analysis::verify_regime_numerically(
        paper_mixture(), model::ThreatModel(1.5), grid, analysis::RegimeQuantity::risk);
    CHECK(standard.interior_maxima == 1);
    CHECK(standard.local_max_at_half);
    CHECK(standard.symmetry_defect <= 1e-10);

    auto gap_s = analysis::verify_regime_numerically(
        paper_mixture(), model::ThreatModel(2.5), grid, analysis::RegimeQuantity::gap);
    CHECK(gap_s.interior_maxima == 2);
    CHECK(gap_s.local_min_at_half);
}

TEST_CASE("extrema counts match regime labels across both regimes") {
    // Equal-magnitude diagonal family: the risk regime flips at eps = m/2
    // while the gap regime is surprising for every positive budget.
    Vector grid = symmetric_pi_grid(1e-3);
    int standard_seen = 0, surprising_seen = 0;
    std::mt19937_64 rng(610);
    for (double m : {1.6, 2.0, 2.4}) {
        for (int d : {2, 3}) {
            for (double frac : {0.30, 0.42, 0.62, 0.80}) {
                Vector mu(d);
                for (int i = 0; i < d; ++i) mu[i] = (i % 2 ? -m : m);
                auto mix = model::GaussianMixture(
                    mu, testgen::random_diag_spd(rng, d, 0.9, 2.2), 0.5);
                model::ThreatModel threat(frac * m);

                auto rr = analysis::risk_regime(mix, threat);
                if (rr.near_boundary) continue;
                auto shape = analysis::verify_regime_numerically(
                    mix, threat, grid, analysis::RegimeQuantity::risk);
                if (rr.label == analysis::Regime::surprising) {
                    ++surprising_seen;
                    CHECK(shape.interior_maxima == 2);
                    CHECK(shape.local_min_at_half);
                } else {
                    ++standard_seen;
                    CHECK(shape.interior_maxima == 1);
                    CHECK(shape.local_max_at_half);
                }

                auto gr = analysis::gap_regime(mix, threat);
                if (gr.near_boundary) continue;
                auto gap_shape = analysis::verify_regime_numerically(
                    mix, threat, grid, analysis::RegimeQuantity::gap);
                if (gr.label == analysis::Regime::surprising) {
                    CHECK(gap_shape.interior_maxima == 2);
                    CHECK(gap_shape.local_min_at_half);
                } else {
                    CHECK(gap_shape.interior_maxima == 1);
                    CHECK(gap_shape.local_max_at_half);
                }
            }
        }
    }
    CHECK(standard_seen >= 10);
    CHECK(surprising_seen >= 10);
}

TEST_CASE("verify_regime_numerically validates its grid") {
    auto mix = paper_mixture();
    model::ThreatModel threat(1.0);
    Vector asym(5);
    asym << 0.1, 0.2, 0.5, 0.8, 0.85;
    CHECK_THROWS_AS(analysis::verify_regime_numerically(mix, threat, asym,
                                                        analysis::RegimeQuantity::risk),
                    DomainError);
    Vector no_half(6);
    no_half << 0.1, 0.2, 0.4, 0.6, 0.8, 0.9;
    CHECK_THROWS_AS(analysis::verify_regime_numerically(mix, threat, no_half,
                                                        analysis::RegimeQuantity::risk),
                    DomainError);
}

TEST_CASE("gap bound terms of the reference instance") {
    auto terms = analysis::gap_bound_terms(paper_mixture());
    CHECK(terms.C_sigma_mu == doctest::Approx(0.15730337078651685).epsilon(1e-12));
    CHECK(terms.eps_limit_A == doctest::Approx(1.4833333333333333).epsilon(1e-12));
    CHECK(terms.eps_limit_B == doctest::Approx(3.4332495366565450).epsilon(1e-12));

    Vector mu(3);
    mu << 2.0, 2.0, 2.0;
    auto iso = model::GaussianMixture(mu, Matrix::Identity(3, 3), 0.5);
    auto t2 = analysis::gap_bound_terms(iso);
    CHECK(t2.C_sigma_mu == 0.0);
    CHECK(std::isinf(t2.eps_limit_B));

    CHECK_THROWS_AS(analysis::gap_bound_terms(paper_mixture(0.6)), UnsupportedError);

    std::mt19937_64 rng(602);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + static_cast<int>(rng() % 4);
        auto mix = testgen::random_mixture(rng, d);
        CHECK(analysis::gap_bound_terms(mix).C_sigma_mu >= 0.0);
    }
}

TEST_CASE("gap bounds on the reference instance at eps=1") {
    auto mix = paper_mixture();
    model::ThreatModel threat(1.0);
    double lower = analysis::gap_lower_bound(mix, threat);
    double expo = analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::exponential);
    double phid = analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::phi_difference);
    double prec = analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::precise);

    CHECK(std::abs(lower / 1.8832750642609050e-4 - 1.0) <= 1e-9);
    CHECK(std::abs(expo / 1.8236711775254238e-2 - 1.0) <= 1e-9);
    CHECK(std::abs(phid / 1.3247345252026478e-3 - 1.0) <= 1e-9);
    CHECK(std::abs(prec / 1.5374432364825141e-3 - 1.0) <= 1e-9);

    double gap = risk::gap(mix, threat);
    CHECK(lower <= gap);
    CHECK(gap <= phid);
    CHECK(phid <= prec);
    CHECK(prec <= expo);
}

TEST_CASE("bounds vanish at eps=0 and respect applicability limits") {
    auto mix = paper_mixture();
    CHECK(analysis::gap_upper_bound(mix, model::ThreatModel(0.0),
                                    analysis::UpperBoundForm::phi_difference) == 0.0);
    CHECK(analysis::gap_lower_bound(mix, model::ThreatModel(0.0)) == 0.0);

    CHECK_THROWS_AS(analysis::gap_upper_bound(mix, model::ThreatModel(1.49),
                                              analysis::UpperBoundForm::phi_difference),
                    ApplicabilityError);
    CHECK_THROWS_AS(analysis::gap_lower_bound(mix, model::ThreatModel(1.6)), ApplicabilityError);

    Vector mu(2);
    mu << 2.0, 2.0;
    auto iso = model::GaussianMixture(mu, Matrix::Identity(2, 2), 0.5);
    CHECK(analysis::gap_lower_bound(iso, model::ThreatModel(1.0)) == 0.0);  // C = 0

    Matrix dense(2, 2);
    dense << 1.0, 0.3, 0.3, 1.0;
    auto nondiag = model::GaussianMixture(mu, dense, 0.5);
    CHECK_THROWS_AS(analysis::gap_lower_bound(nondiag, model::ThreatModel(0.5)),
                    ApplicabilityError);
}

TEST_CASE("bound sandwich on random diagonal balanced instances") {
    std::mt19937_64 rng(603);
    std::uniform_real_distribution<double> mu_dist(0.8, 2.5);
    std::uniform_int_distribution<int> coin(0, 1);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 200; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        Vector mu(d);
        for (int i = 0; i < d; ++i) mu[i] = (coin(rng) ? 1.0 : -1.0) * mu_dist(rng);
        auto mix = model::GaussianMixture(mu, testgen::random_diag_spd(rng, d, 0.6, 3.0), 0.5);
        auto terms = analysis::gap_bound_terms(mix);
        double eps_cap = std::min({terms.eps_limit_A, terms.eps_limit_B,
                                   mu.cwiseAbs().minCoeff()});
        if (!(eps_cap > 0.05)) continue;
        std::uniform_real_distribution<double> eps_dist(0.05, eps_cap * 0.999);
        model::ThreatModel threat(eps_dist(rng));

        double lower = analysis::gap_lower_bound(mix, threat);
        double gap = risk::gap(mix, threat);
        double phid = analysis::gap_upper_bound(mix, threat,
                                                analysis::UpperBoundForm::phi_difference);
        double prec = analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::precise);
        double expo = analysis::gap_upper_bound(mix, threat,
                                                analysis::UpperBoundForm::exponential);
        CHECK(lower <= gap + 1e-12);
        CHECK(gap <= phid + 1e-12);
        CHECK(phid <= prec + 1e-12);
        CHECK(prec <= expo + 1e-12);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("gap scales quadratically for small budgets") {
    std::mt19937_64 rng(604);
    std::uniform_real_distribution<double> mu_dist(1.0, 2.0);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        Vector mu(d);
        for (int i = 0; i < d; ++i) mu[i] = (coin(rng) ? 1.0 : -1.0) * mu_dist(rng);
        mu[0] *= 1.3;  // keep C > 0
        auto mix = model::GaussianMixture(mu, testgen::random_diag_spd(rng, d, 0.6, 2.0), 0.5);
        auto terms = analysis::gap_bound_terms(mix);
        if (terms.C_sigma_mu < 1e-6) continue;
        double eps_cap = std::min({terms.eps_limit_A, terms.eps_limit_B,
                                   mu.cwiseAbs().minCoeff()});
        double eps = eps_cap / 4.0;
        model::ThreatModel threat(eps);
        double gap_over_eps2 = risk::gap(mix, threat) / (eps * eps);
        double lower_coef = analysis::gap_lower_bound(mix, threat) / (eps * eps);
        double upper_coef =
            analysis::gap_upper_bound(mix, threat, analysis::UpperBoundForm::exponential) /
            (eps * eps);
        CHECK(gap_over_eps2 >= lower_coef - 1e-12);
        CHECK(gap_over_eps2 <= upper_coef + 1e-12);
    }
}
