#include "robustmix/classifiers.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace robustmix::classifiers {

namespace {

double shared_bias(const model::GaussianMixture& mixture) {
    return 0.5 * std::log(mixture.pi_plus() / mixture.pi_minus());
}

}  // namespace

model::LinearClassifier bayes_classifier(const model::GaussianMixture& mixture) {
    return model::LinearClassifier{mixture.sigma_inv(mixture.mu()), shared_bias(mixture)};
}

AdversarialOptimum adversarial_classifier(const model::GaussianMixture& mixture,
                                          const model::ThreatModel& threat,
                                          const boxqp::SolveOptions& options) {
    AdversarialOptimum out;
    out.qp = boxqp::solve_zstar(mixture, threat, options);
    out.trivial = !model::nontrivial_budget(mixture, threat);
    if (out.trivial) {
        out.classifier = model::LinearClassifier{Vector::Zero(mixture.dim()), shared_bias(mixture)};
    } else {
        Vector u = mixture.mu() - threat.epsilon * out.qp.z_star;
        out.classifier = model::LinearClassifier{mixture.sigma_inv(u), shared_bias(mixture)};
    }
    return out;
}

NoTradeoffReport no_tradeoff_check(const model::GaussianMixture& mixture,
                                   const model::ThreatModel& threat) {
    if (mixture.pi_plus() != 0.5) {
        throw UnsupportedError("no_tradeoff_check: only the balanced case pi_plus = 1/2 is characterized");
    }

    const Vector& mu = mixture.mu();
    const Vector v = mixture.sigma_inv(mu);
    const double eps = threat.epsilon;
    const int d = mixture.dim();

    constexpr double kZeroBand = 1e-10;   // (Sigma^{-1}mu)_i treated as zero
    constexpr double kMatchTol = 1e-9;    // relative tolerance on the shared constant

    NoTradeoffReport report;

    // Candidate constant: common value of mu_i * sign(v_i) over the support.
    double c_hat = -std::numeric_limits<double>::infinity();
    bool any_support = false;
    for (int i = 0; i < d; ++i) {
        if (std::abs(v[i]) > kZeroBand) {
            any_support = true;
            c_hat = std::max(c_hat, mu[i] * (v[i] > 0.0 ? 1.0 : -1.0));
        }
    }
    if (!any_support) {
        // Sigma^{-1}mu = 0 forces mu = 0 (Sigma is invertible); any c >= eps works.
        report.equivalent = true;
        report.witness_c = eps;
        return report;
    }

    const double band = kMatchTol * std::max(1.0, std::abs(c_hat));
    bool ok = c_hat >= eps - 1e-12;
    for (int i = 0; i < d; ++i) {
        bool coord_ok;
        if (std::abs(v[i]) > kZeroBand) {
            coord_ok = std::abs(mu[i] * (v[i] > 0.0 ? 1.0 : -1.0) - c_hat) <= band;
        } else {
            coord_ok = std::abs(mu[i]) <= c_hat + band;
        }
        if (!coord_ok) report.violating_indices.push_back(i);
        ok = ok && coord_ok;
    }

    if (ok) {
        report.equivalent = true;
        report.witness_c = c_hat;
    } else if (report.violating_indices.empty()) {
        // Coordinates agree on a common magnitude but it falls short of eps.
        for (int i = 0; i < d; ++i) {
            if (std::abs(v[i]) > kZeroBand) report.violating_indices.push_back(i);
        }
    }
    return report;
}

bool linear_loss_tradeoff_check(const Vector& mu, double epsilon, double p) {
    if (epsilon < 0.0 || !std::isfinite(epsilon)) {
        throw DomainError("linear_loss_tradeoff_check: epsilon must be finite and >= 0");
    }
    if (std::isnan(p) || p < 1.0) {
        throw DomainError("linear_loss_tradeoff_check: norm order must satisfy p >= 1");
    }
    const double sup = mu.size() ? mu.cwiseAbs().maxCoeff() : 0.0;

    if (p == 1.0) {
        return sup >= epsilon || sup == 0.0;
    }
    if (std::isinf(p)) {
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            if (mu[i] != 0.0 && std::abs(mu[i]) < epsilon) return false;
        }
        return true;
    }
    // 1 < p < inf: nonzero entries share one magnitude c >= eps.
    double c = -1.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        if (mu[i] == 0.0) continue;
        double m = std::abs(mu[i]);
        if (c < 0.0) {
            c = m;
        } else if (std::abs(m - c) > 1e-9 * std::max(1.0, c)) {
            return false;
        }
    }
    if (c < 0.0) return true;  // mu = 0
    return c >= epsilon - 1e-12;
}

}  // namespace robustmix::classifiers
