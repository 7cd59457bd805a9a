#pragma once

#include <optional>
#include <vector>

#include "robustmix/boxqp.hpp"
#include "robustmix/model.hpp"

namespace robustmix::classifiers {

using model::Vector;

// Bayes optimal classifier: w = Sigma^{-1} mu, w0 = ln(pi+/pi-)/2.
model::LinearClassifier bayes_classifier(const model::GaussianMixture& mixture);

struct AdversarialOptimum {
    model::LinearClassifier classifier;
    boxqp::BoxQpSolution qp;
    bool trivial = false;  // eps >= ||mu||_inf forced w to zero
};

// Optimal adversarial classifier: w = Sigma^{-1}(mu - eps z*), same bias as
// Bayes. Returns the exact zero classifier (trivial flag set) once the budget
// reaches ||mu||_inf.
AdversarialOptimum adversarial_classifier(const model::GaussianMixture& mixture,
                                          const model::ThreatModel& threat,
                                          const boxqp::SolveOptions& options = {});

struct NoTradeoffReport {
    bool equivalent = false;
    std::optional<double> witness_c;  // the common magnitude, when it exists
    std::vector<int> violating_indices;
};

// Balanced-case equivalence test for the Bayes and adversarial optima:
// equivalent iff a single constant c >= eps has mu_i = c*sign((Sigma^{-1}mu)_i)
// on the support of Sigma^{-1}mu and |mu_i| <= c off it.
// Rejects pi_plus != 1/2 and eps >= ||mu||_inf.
NoTradeoffReport no_tradeoff_check(const model::GaussianMixture& mixture,
                                   const model::ThreatModel& threat);

// Linear-loss no-tradeoff conditions per norm order p (1, finite p > 1, or
// +infinity), on the class-mean vector alone.
bool linear_loss_tradeoff_check(const Vector& mu, double epsilon, double p);

}  // namespace robustmix::classifiers
