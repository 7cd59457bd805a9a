#pragma once

#include <Eigen/Dense>

#include "robustmix/numerics.hpp"

namespace robustmix::model {

using numerics::Matrix;
using numerics::Vector;

// l_inf adversarial budget.
struct ThreatModel {
    double epsilon = 0.0;

    ThreatModel() = default;
    explicit ThreatModel(double eps);
};

// Two-class Gaussian mixture: x|y ~ N(y*mu, sigma), P[y=+1] = pi_plus.
// Construction validates (sigma SPD, pi_plus in (0,1), shapes agree) and
// caches the Cholesky factor of sigma. Immutable afterwards.
class GaussianMixture {
public:
    GaussianMixture(Vector mu, Matrix sigma, double pi_plus);

    const Vector& mu() const { return mu_; }
    const Matrix& sigma() const { return sigma_; }
    double pi_plus() const { return pi_plus_; }
    double pi_minus() const { return 1.0 - pi_plus_; }
    int dim() const { return static_cast<int>(mu_.size()); }
    const numerics::SpdFactor& sigma_factor() const { return factor_; }

    // Sigma^{-1} v.
    Vector sigma_inv(const Vector& v) const { return numerics::spd_solve(factor_, v); }
    // ||v||_{Sigma^{-1}}.
    double mahalanobis(const Vector& v) const { return numerics::mahalanobis_inv_norm(factor_, v); }

private:
    Vector mu_;
    Matrix sigma_;
    double pi_plus_;
    numerics::SpdFactor factor_;
};

GaussianMixture validate_mixture(const Vector& mu, const Matrix& sigma, double pi_plus);

// Predict sign(<w,x> + w0); the tie at exactly zero resolves to +1.
struct LinearClassifier {
    Vector w;
    double w0 = 0.0;

    int predict(const Vector& x) const {
        double s = w.dot(x) + w0;
        return s < 0.0 ? -1 : +1;
    }
    bool is_zero() const { return w.size() == 0 || w.isZero(0.0); }
};

// True iff epsilon < ||mu||_inf, i.e. the optimal adversarial classifier is
// not forced to zero.
bool nontrivial_budget(const GaussianMixture& mixture, const ThreatModel& threat);

}  // namespace robustmix::model
