#include "robustmix/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robustmix/classifiers.hpp"
#include "robustmix/parallel.hpp"
#include "robustmix/risk.hpp"

namespace robustmix::analysis {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

void require_nontrivial(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                        const char* op) {
    if (!model::nontrivial_budget(mixture, threat)) {
        throw ApplicabilityError(std::string(op) + ": requires eps < ||mu||_inf");
    }
}

void require_balanced(const model::GaussianMixture& mixture, const char* op) {
    if (mixture.pi_plus() != 0.5) {
        throw UnsupportedError(std::string(op) + ": only balanced mixtures (pi_plus = 1/2) are supported");
    }
}

}  // namespace

double NaturalRiskCurve::at(double pi_plus) const {
    double w0 = 0.5 * std::log(pi_plus / (1.0 - pi_plus));
    if (zero) return w0 >= 0.0 ? 1.0 - pi_plus : pi_plus;
    double plus = numerics::std_normal_cdf((-margin - w0) / sigma_norm);
    double minus = numerics::std_normal_cdf((-margin + w0) / sigma_norm);
    return pi_plus * plus + (1.0 - pi_plus) * minus;
}

NaturalRiskCurve natural_risk_curve(const model::LinearClassifier& classifier,
                                    const model::GaussianMixture& mixture) {
    NaturalRiskCurve t;
    t.zero = classifier.is_zero();
    if (!t.zero) {
        t.margin = classifier.w.dot(mixture.mu());
        t.sigma_norm = std::sqrt(classifier.w.dot(mixture.sigma() * classifier.w));
    }
    return t;
}

RegimeParams regime_params(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                           const boxqp::SolveOptions& options) {
    require_nontrivial(mixture, threat, "regime_params");
    auto sol = boxqp::solve_zstar(mixture, threat, options);
    Vector u = mixture.mu() - threat.epsilon * sol.z_star;
    RegimeParams p;
    p.c = 2.0 * mixture.mu().dot(mixture.sigma_inv(u));
    p.d = 2.0 * mixture.mahalanobis(u);
    p.ratio = p.c / (p.d * p.d);
    return p;
}

RegimeReport risk_regime(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                         const boxqp::SolveOptions& options) {
    RegimeReport r;
    r.params = regime_params(mixture, threat, options);
    r.condition_lhs = r.params.c;
    r.condition_rhs = r.params.d * r.params.d;
    double band = 1e-10 * std::max({1.0, std::abs(r.condition_lhs), std::abs(r.condition_rhs)});
    r.near_boundary = std::abs(r.condition_lhs - r.condition_rhs) <= band;
    r.label = r.condition_lhs > r.condition_rhs + band ? Regime::surprising : Regime::standard;
    return r;
}

RegimeReport gap_regime(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                        const boxqp::SolveOptions& options) {
    RegimeReport r;
    r.params = regime_params(mixture, threat, options);
    const double c = r.params.c;
    const double d = r.params.d;
    const double m = mixture.mahalanobis(mixture.mu());
    r.condition_lhs = 2.0 * (r.params.ratio - 1.0) * std::exp(-0.5 * (c / d) * (c / d)) / d;
    r.condition_rhs = -std::exp(-0.5 * m * m) / (2.0 * m);
    double band =
        1e-10 * std::max({std::abs(r.condition_lhs), std::abs(r.condition_rhs), 1e-300});
    r.near_boundary = std::abs(r.condition_lhs - r.condition_rhs) <= band;
    r.label = r.condition_lhs > r.condition_rhs + band ? Regime::surprising : Regime::standard;

    if (risk_regime(mixture, threat, options).label == Regime::surprising &&
        r.label != Regime::surprising) {
        throw std::logic_error("gap_regime: surprising risk regime must imply a surprising gap regime");
    }
    return r;
}

double regime_curve_value(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                          double pi_plus, RegimeQuantity which,
                          const boxqp::SolveOptions& options) {
    auto adv = classifiers::adversarial_classifier(mixture, threat, options);
    NaturalRiskCurve adv_terms = natural_risk_curve(adv.classifier, mixture);
    if (which == RegimeQuantity::risk) return adv_terms.at(pi_plus);
    NaturalRiskCurve nat_terms = natural_risk_curve(classifiers::bayes_classifier(mixture), mixture);
    return adv_terms.at(pi_plus) - nat_terms.at(pi_plus);
}

ExtremaSummary verify_regime_numerically(const model::GaussianMixture& mixture,
                                         const model::ThreatModel& threat,
                                         const Vector& pi_grid, RegimeQuantity which,
                                         const boxqp::SolveOptions& options) {
    const auto n = pi_grid.size();
    if (n < 5) throw DomainError("verify_regime_numerically: grid too short");
    long half_index = -1;
    for (Eigen::Index k = 0; k < n; ++k) {
        double pi = pi_grid[k];
        if (!(pi > 0.0 && pi < 1.0)) {
            throw DomainError("verify_regime_numerically: grid must lie inside (0,1)");
        }
        if (k > 0 && !(pi > pi_grid[k - 1])) {
            throw DomainError("verify_regime_numerically: grid must be strictly increasing");
        }
        if (std::abs(pi + pi_grid[n - 1 - k] - 1.0) > 1e-12) {
            throw DomainError("verify_regime_numerically: grid must be symmetric about 1/2");
        }
        if (std::abs(pi - 0.5) <= 1e-12) half_index = k;
    }
    if (half_index < 0) {
        throw DomainError("verify_regime_numerically: grid must contain pi = 1/2");
    }

    auto adv = classifiers::adversarial_classifier(mixture, threat, options);
    NaturalRiskCurve adv_terms = natural_risk_curve(adv.classifier, mixture);
    NaturalRiskCurve nat_terms = natural_risk_curve(classifiers::bayes_classifier(mixture), mixture);

    Vector f(n);
    parallel::parallel_for(n, [&](long k) {
        double v = adv_terms.at(pi_grid[k]);
        if (which == RegimeQuantity::gap) v -= nat_terms.at(pi_grid[k]);
        f[k] = v;
    });

    constexpr double kFlatBand = 1e-12;
    ExtremaSummary summary;
    for (Eigen::Index k = 2; k + 2 < n; ++k) {
        if (f[k] > f[k - 1] + kFlatBand && f[k] > f[k + 1] + kFlatBand) {
            ++summary.interior_maxima;
            summary.maxima_locations.push_back(pi_grid[k]);
        }
    }
    summary.local_min_at_half = half_index > 0 && half_index + 1 < n &&
                                f[half_index] < f[half_index - 1] - kFlatBand &&
                                f[half_index] < f[half_index + 1] - kFlatBand;
    summary.local_max_at_half = half_index > 0 && half_index + 1 < n &&
                                f[half_index] > f[half_index - 1] + kFlatBand &&
                                f[half_index] > f[half_index + 1] + kFlatBand;
    for (Eigen::Index k = 0; k < n; ++k) {
        summary.symmetry_defect = std::max(summary.symmetry_defect, std::abs(f[k] - f[n - 1 - k]));
    }
    return summary;
}

GapBoundTerms gap_bound_terms(const model::GaussianMixture& mixture) {
    require_balanced(mixture, "gap_bound_terms");
    GapBoundTerms t;
    const Vector& mu = mixture.mu();
    const double m = mixture.mahalanobis(mu);
    if (m == 0.0) {  // mu = 0: no tradeoff at any budget
        t.C_sigma_mu = 0.0;
        t.eps_limit_A = std::numeric_limits<double>::infinity();
        t.eps_limit_B = std::numeric_limits<double>::infinity();
        return t;
    }
    Vector v = mixture.sigma_inv(mu);
    Vector s(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        s[i] = v[i] > 0.0 ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
    }
    const double l1 = v.lpNorm<1>();
    const double sn = mixture.mahalanobis(s);
    t.C_sigma_mu = sn * sn - (l1 * l1) / (m * m);
    // Hoelder gives C >= 0; rounding noise on the equality case snaps to zero.
    if (t.C_sigma_mu <= 1e-12 * std::max(1.0, sn * sn)) t.C_sigma_mu = 0.0;
    t.eps_limit_A = m * m / (2.0 * l1);
    t.eps_limit_B = t.C_sigma_mu == 0.0 ? std::numeric_limits<double>::infinity()
                                        : m / (2.0 * std::sqrt(t.C_sigma_mu));
    return t;
}

double gap_upper_bound(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                       UpperBoundForm form) {
    GapBoundTerms t = gap_bound_terms(mixture);
    const double eps = threat.epsilon;
    if (eps > t.eps_limit_A) {
        throw ApplicabilityError("gap_upper_bound: eps exceeds eps_limit_A = " +
                                 std::to_string(t.eps_limit_A));
    }
    if (form != UpperBoundForm::precise && eps > t.eps_limit_B) {
        throw ApplicabilityError("gap_upper_bound: eps exceeds eps_limit_B = " +
                                 std::to_string(t.eps_limit_B));
    }
    const double m = mixture.mahalanobis(mixture.mu());
    if (m == 0.0) return 0.0;
    const double shift = 2.0 * t.C_sigma_mu * eps * eps / m;
    switch (form) {
        case UpperBoundForm::phi_difference:
            return numerics::std_normal_cdf(-m + shift) - numerics::std_normal_cdf(-m);
        case UpperBoundForm::exponential:
            return 2.0 * std::exp(-m * m / 8.0) * t.C_sigma_mu * eps * eps / (kSqrt2Pi * m);
        case UpperBoundForm::precise: {
            const double b = -m + shift;
            return 2.0 * std::exp(-0.5 * b * b) * t.C_sigma_mu * eps * eps / (kSqrt2Pi * m);
        }
    }
    throw DomainError("gap_upper_bound: unknown form");
}

double gap_lower_bound(const model::GaussianMixture& mixture, const model::ThreatModel& threat) {
    GapBoundTerms t = gap_bound_terms(mixture);
    const double eps = threat.epsilon;
    const auto& sigma = mixture.sigma();
    for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
        for (Eigen::Index j = 0; j < sigma.cols(); ++j) {
            if (i != j && std::abs(sigma(i, j)) > 1e-12) {
                throw ApplicabilityError("gap_lower_bound: Sigma must be diagonal");
            }
        }
    }
    if (mixture.mu().cwiseAbs().minCoeff() < eps) {
        throw ApplicabilityError("gap_lower_bound: requires min|mu_i| >= eps");
    }
    if (eps > t.eps_limit_A || eps > t.eps_limit_B) {
        throw ApplicabilityError("gap_lower_bound: eps exceeds an applicability limit");
    }
    const double m = mixture.mahalanobis(mixture.mu());
    if (m == 0.0) return 0.0;
    return std::exp(-0.5 * m * m) * t.C_sigma_mu * eps * eps / (3.0 * kSqrt2Pi * m);
}

}  // namespace robustmix::analysis
