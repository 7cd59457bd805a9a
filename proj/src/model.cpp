#include "robustmix/model.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace robustmix::model {

ThreatModel::ThreatModel(double eps) : epsilon(eps) {
    if (!std::isfinite(eps) || eps < 0.0) {
        throw DomainError("ThreatModel: epsilon must be finite and >= 0");
    }
}

GaussianMixture::GaussianMixture(Vector mu, Matrix sigma, double pi_plus)
    : mu_(std::move(mu)), sigma_(std::move(sigma)), pi_plus_(pi_plus),
      factor_(numerics::cholesky(sigma_)) {
    if (sigma_.rows() != mu_.size()) {
        throw ShapeError("GaussianMixture: mu has length " + std::to_string(mu_.size()) +
                         " but sigma is " + std::to_string(sigma_.rows()) + "x" +
                         std::to_string(sigma_.cols()));
    }
    if (!std::isfinite(pi_plus) || pi_plus <= 0.0 || pi_plus >= 1.0) {
        throw DomainError("GaussianMixture: pi_plus must lie strictly inside (0,1)");
    }
    if (!mu_.allFinite()) {
        throw DomainError("GaussianMixture: mu must be finite");
    }
}

GaussianMixture validate_mixture(const Vector& mu, const Matrix& sigma, double pi_plus) {
    return GaussianMixture(mu, sigma, pi_plus);
}

bool nontrivial_budget(const GaussianMixture& mixture, const ThreatModel& threat) {
    return threat.epsilon < mixture.mu().cwiseAbs().maxCoeff();
}

}  // namespace robustmix::model
