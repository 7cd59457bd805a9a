#pragma once

#include <Eigen/Dense>

#include "robustmix/errors.hpp"

namespace robustmix::linearloss {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

// Feasible set ||w||_p <= W; p is 1, a finite order > 1, or +infinity.
struct LinearLossConstraint {
    double W;
    double p;
    LinearLossConstraint(double W, double p);
};

// Labeled sample set with the empirical class-mean direction
// mu_hat = (1/n) sum y_i x_i and the observed sup-norm bound A.
struct SampleSet {
    MatrixXd x;   // one sample per row
    VectorXi y;   // labels in {-1,+1}
    VectorXd mu_hat;
    double sup_norm_bound = 0.0;

    long n() const { return x.rows(); }
    int dim() const { return static_cast<int>(x.cols()); }

    static SampleSet from_data(MatrixXd x, VectorXi y);
};

// Closed-form minimizer of the expected adversarial linear loss
// -<w,mu> + eps ||w||_1 over ||w||_p <= W. eps = 0 gives the natural optimum.
// p = 1 concentrates the budget on the largest |mu_j| (lowest index on ties),
// p = inf saturates every coordinate with |mu_i| >= eps, and finite p > 1
// p-normalizes the shrunken profile |mu_i - eps sign(mu_i)|^{1/(p-1)}.
VectorXd closed_form_weights(const VectorXd& mu, const LinearLossConstraint& constraint,
                             double epsilon);

// Expected adversarial linear loss -<w,mu> + eps ||w||_1.
double linear_loss_risk(const VectorXd& w, const VectorXd& mu, double epsilon);

// closed_form_weights on the empirical mean of the samples.
VectorXd train_finite_sample(const SampleSet& samples, const LinearLossConstraint& constraint,
                             double epsilon);

enum class HoeffdingCase { p1_equal, p1_gap, pinf_equal, pinf_gap };

struct HoeffdingReport {
    HoeffdingCase which = HoeffdingCase::p1_equal;
    double bound = 0.0;      // clamped to [0,1]
    double raw_bound = 0.0;  // as written, may be negative
    double r = 0.0;          // ||mu||_inf minus the runner-up magnitude
    double tau = 0.0;        // min|mu_j| - eps
    bool tied_maxima = false;
};

// Probability lower bounds for finite-sample training outcomes:
//   p1_equal   1 - 2 exp(-n(||mu||_inf - eps)^2 / (2A^2))
//   p1_gap     1 - 4d 1[r>0] exp(-n r^2/(8A^2)) - 2d exp(-n(eps - ||mu||_inf)^2/(2A^2))
//   pinf_equal 1 - 2d exp(-n tau^2 / (2A^2))
//   pinf_gap   1 - 2 exp(-n min(eps - |mu_j|, |mu_j|)^2 / (2A^2))
// The pinf_gap case takes the coordinate index j.
HoeffdingReport hoeffding_bound(const VectorXd& mu, double epsilon, long n, double A,
                                HoeffdingCase which, int j = -1);

}  // namespace robustmix::linearloss
