#include "robustmix/linearloss.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace robustmix::linearloss {

namespace {

double sign(double x) {
    return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

}  // namespace

LinearLossConstraint::LinearLossConstraint(double W_, double p_) : W(W_), p(p_) {
    if (!(W > 0.0) || !std::isfinite(W)) {
        throw DomainError("LinearLossConstraint: W must be positive and finite");
    }
    if (std::isnan(p) || p < 1.0) {
        throw DomainError("LinearLossConstraint: norm order must satisfy p >= 1");
    }
}

SampleSet SampleSet::from_data(MatrixXd x, VectorXi y) {
    if (x.rows() != y.size()) {
        throw ShapeError("SampleSet: sample count and label count differ");
    }
    if (x.rows() == 0) {
        throw DomainError("SampleSet: need at least one sample");
    }
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] != 1 && y[i] != -1) {
            throw DomainError("SampleSet: labels must be -1 or +1");
        }
    }
    SampleSet s;
    s.mu_hat = (x.transpose() * y.cast<double>()) / static_cast<double>(x.rows());
    s.sup_norm_bound = x.cwiseAbs().maxCoeff();
    s.x = std::move(x);
    s.y = std::move(y);
    return s;
}

VectorXd closed_form_weights(const VectorXd& mu, const LinearLossConstraint& constraint,
                             double epsilon) {
    if (epsilon < 0.0 || !std::isfinite(epsilon)) {
        throw DomainError("closed_form_weights: epsilon must be finite and >= 0");
    }
    const auto d = mu.size();
    const double sup = d ? mu.cwiseAbs().maxCoeff() : 0.0;
    VectorXd w = VectorXd::Zero(d);

    if (constraint.p == 1.0) {
        if (sup >= epsilon) {
            Eigen::Index best = 0;
            mu.cwiseAbs().maxCoeff(&best);
            w[best] = constraint.W * sign(mu[best]);
        }
        return w;
    }
    if (std::isinf(constraint.p)) {
        for (Eigen::Index i = 0; i < d; ++i) {
            if (std::abs(mu[i]) >= epsilon && mu[i] != 0.0) {
                w[i] = constraint.W * sign(mu[i]);
            }
        }
        return w;
    }
    // 1 < p < inf
    if (sup <= epsilon) return w;
    VectorXd eta = VectorXd::Zero(d);
    const double inv_pm1 = 1.0 / (constraint.p - 1.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(mu[i]) >= epsilon) {
            eta[i] = std::pow(std::abs(mu[i] - epsilon * sign(mu[i])), inv_pm1) * sign(mu[i]);
        }
    }
    double norm_p = std::pow(eta.cwiseAbs().array().pow(constraint.p).sum(), 1.0 / constraint.p);
    return constraint.W * eta / norm_p;
}

double linear_loss_risk(const VectorXd& w, const VectorXd& mu, double epsilon) {
    if (w.size() != mu.size()) {
        throw ShapeError("linear_loss_risk: w and mu lengths differ");
    }
    return -w.dot(mu) + epsilon * w.lpNorm<1>();
}

VectorXd train_finite_sample(const SampleSet& samples, const LinearLossConstraint& constraint,
                             double epsilon) {
    if (samples.n() < 1) {
        throw DomainError("train_finite_sample: empty sample set");
    }
    return closed_form_weights(samples.mu_hat, constraint, epsilon);
}

HoeffdingReport hoeffding_bound(const VectorXd& mu, double epsilon, long n, double A,
                                HoeffdingCase which, int j) {
    if (mu.size() == 0) throw DomainError("hoeffding_bound: mu must be non-empty");
    if (n < 1) throw DomainError("hoeffding_bound: n must be >= 1");
    if (!(A > 0.0)) throw DomainError("hoeffding_bound: A must be positive");
    if (epsilon < 0.0) throw DomainError("hoeffding_bound: epsilon must be >= 0");

    const auto d = static_cast<double>(mu.size());
    const double sup = mu.cwiseAbs().maxCoeff();
    const double lo = mu.cwiseAbs().minCoeff();
    const double nd = static_cast<double>(n);
    const double a2 = 2.0 * A * A;

    HoeffdingReport rep;
    rep.which = which;
    rep.tau = lo - epsilon;

    // Runner-up gap: distance from ||mu||_inf to the largest strictly smaller
    // magnitude; zero when every entry attains the maximum.
    double runner_up = -1.0;
    int max_count = 0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        double m = std::abs(mu[i]);
        if (m == sup) ++max_count;
        else runner_up = std::max(runner_up, m);
    }
    rep.r = runner_up < 0.0 ? 0.0 : sup - runner_up;
    rep.tied_maxima = max_count > 1;

    switch (which) {
        case HoeffdingCase::p1_equal:
            if (sup < epsilon) {
                throw ApplicabilityError("hoeffding_bound: p1_equal needs ||mu||_inf >= eps");
            }
            rep.raw_bound = 1.0 - 2.0 * std::exp(-nd * (sup - epsilon) * (sup - epsilon) / a2);
            break;
        case HoeffdingCase::p1_gap:
            if (!(sup > 0.0 && sup < epsilon)) {
                throw ApplicabilityError("hoeffding_bound: p1_gap needs 0 < ||mu||_inf < eps");
            }
            rep.raw_bound = 1.0 -
                            (rep.r > 0.0 ? 4.0 * d * std::exp(-nd * rep.r * rep.r / (4.0 * a2)) : 0.0) -
                            2.0 * d * std::exp(-nd * (epsilon - sup) * (epsilon - sup) / a2);
            break;
        case HoeffdingCase::pinf_equal:
            if (lo < epsilon) {
                throw ApplicabilityError("hoeffding_bound: pinf_equal needs min|mu_i| >= eps");
            }
            rep.raw_bound = 1.0 - 2.0 * d * std::exp(-nd * rep.tau * rep.tau / a2);
            break;
        case HoeffdingCase::pinf_gap: {
            if (j < 0 || j >= mu.size()) {
                throw DomainError("hoeffding_bound: pinf_gap needs a coordinate index j");
            }
            double mj = std::abs(mu[j]);
            if (!(mj > 0.0 && mj < epsilon)) {
                throw ApplicabilityError("hoeffding_bound: pinf_gap needs 0 < |mu_j| < eps");
            }
            double delta = std::min(epsilon - mj, mj);
            rep.raw_bound = 1.0 - 2.0 * std::exp(-nd * delta * delta / a2);
            break;
        }
    }
    rep.bound = std::min(1.0, std::max(0.0, rep.raw_bound));
    return rep;
}

}  // namespace robustmix::linearloss
