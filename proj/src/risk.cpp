#include "robustmix/risk.hpp"

#include <algorithm>
#include <cmath>

#include "robustmix/classifiers.hpp"

namespace robustmix::risk {

namespace {

double clamp01(double p) {
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace

RiskReport adversarial_risk(const model::LinearClassifier& classifier,
                            const model::GaussianMixture& mixture,
                            const model::ThreatModel& threat) {
    if (classifier.w.size() != mixture.dim()) {
        throw ShapeError("adversarial_risk: classifier dimension does not match mixture");
    }

    RiskReport report;
    if (classifier.is_zero()) {
        // Constant prediction sign(w0), +1 on the tie; the adversary cannot
        // change it, so natural and adversarial risks coincide.
        const bool predicts_plus = classifier.w0 >= 0.0;
        report.plus_term = predicts_plus ? 0.0 : 1.0;
        report.minus_term = predicts_plus ? 1.0 : 0.0;
        report.natural_risk = predicts_plus ? mixture.pi_minus() : mixture.pi_plus();
        report.adversarial_risk = report.natural_risk;
        return report;
    }

    const double margin = classifier.w.dot(mixture.mu());
    const double l1 = classifier.w.lpNorm<1>();
    const double sigma_norm = std::sqrt(classifier.w.dot(mixture.sigma() * classifier.w));

    auto risk_at = [&](double eps, double* plus, double* minus) {
        double p = numerics::std_normal_cdf((-margin + eps * l1 - classifier.w0) / sigma_norm);
        double m = numerics::std_normal_cdf((-margin + eps * l1 + classifier.w0) / sigma_norm);
        if (plus) *plus = p;
        if (minus) *minus = m;
        return clamp01(mixture.pi_plus() * p + mixture.pi_minus() * m);
    };

    report.adversarial_risk = risk_at(threat.epsilon, &report.plus_term, &report.minus_term);
    report.natural_risk =
        threat.epsilon == 0.0 ? report.adversarial_risk : risk_at(0.0, nullptr, nullptr);
    return report;
}

double natural_risk(const model::LinearClassifier& classifier,
                    const model::GaussianMixture& mixture) {
    return adversarial_risk(classifier, mixture, model::ThreatModel(0.0)).natural_risk;
}

double gap(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
           const boxqp::SolveOptions& options) {
    auto adv = classifiers::adversarial_classifier(mixture, threat, options);
    double r_adv = natural_risk(adv.classifier, mixture);
    double r_nat = natural_risk(classifiers::bayes_classifier(mixture), mixture);
    return std::max(0.0, r_adv - r_nat);
}

}  // namespace robustmix::risk
