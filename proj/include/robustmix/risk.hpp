#pragma once

#include "robustmix/boxqp.hpp"
#include "robustmix/model.hpp"

namespace robustmix::risk {

struct RiskReport {
    double natural_risk = 0.0;
    double adversarial_risk = 0.0;
    double plus_term = 0.0;   // class +1 conditional error at the queried eps
    double minus_term = 0.0;  // class -1 conditional error at the queried eps
};

// Exact closed-form risks of a linear classifier against the mixture:
//   R_adv = pi+ Phi((-<w,mu> + eps||w||_1 - w0)/||w||_Sigma)
//         + pi- Phi((-<w,mu> + eps||w||_1 + w0)/||w||_Sigma).
// The zero classifier predicts the constant sign(w0) (+1 on the w0 = 0 tie).
RiskReport adversarial_risk(const model::LinearClassifier& classifier,
                            const model::GaussianMixture& mixture,
                            const model::ThreatModel& threat);

// adversarial_risk at eps = 0.
double natural_risk(const model::LinearClassifier& classifier,
                    const model::GaussianMixture& mixture);

// Natural-accuracy gap G = R_nat(w_adv) - R_nat(w_nat), both classifiers built
// with the shared bias ln(pi+/pi-)/2. Clamped to be nonnegative.
double gap(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
           const boxqp::SolveOptions& options = {});

}  // namespace robustmix::risk
