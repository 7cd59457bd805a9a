#pragma once

#include <vector>

#include "robustmix/boxqp.hpp"
#include "robustmix/model.hpp"

namespace robustmix::analysis {

using model::Vector;

// c = 2<mu, Sigma^{-1}(mu - eps z*)>, d = 2||mu - eps z*||_{Sigma^{-1}}.
// ratio = c/d^2 is at least 1/2, with equality exactly at eps = 0.
struct RegimeParams {
    double c = 0.0;
    double d = 0.0;
    double ratio = 0.0;
};

RegimeParams regime_params(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                           const boxqp::SolveOptions& options = {});

enum class Regime { standard, surprising };

struct RegimeReport {
    Regime label = Regime::standard;
    bool near_boundary = false;  // the two condition sides agree to 1e-10 relative
    RegimeParams params;
    double condition_lhs = 0.0;
    double condition_rhs = 0.0;
};

// Shape of R_nat(w_adv) as a function of pi_plus: surprising (local minimum at
// 1/2, two symmetric maxima) iff c > d^2.
RegimeReport risk_regime(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                         const boxqp::SolveOptions& options = {});

// Shape of the gap as a function of pi_plus: surprising iff
// 2(c/d^2 - 1) e^{-(c/d)^2/2} / d  >  -e^{-||mu||^2/2} / (2||mu||),
// norms in Sigma^{-1} geometry. A surprising risk regime forces a surprising
// gap regime.
RegimeReport gap_regime(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                        const boxqp::SolveOptions& options = {});

enum class RegimeQuantity { risk, gap };

// Natural risk of one fixed weight vector as a function of the prior, with
// the bias re-derived as ln(pi/(1-pi))/2 at every point. Precomputes the
// margin and Sigma-norm so a sweep point costs two Phi evaluations.
struct NaturalRiskCurve {
    double margin = 0.0;      // <w, mu>
    double sigma_norm = 1.0;  // ||w||_Sigma
    bool zero = false;

    double at(double pi_plus) const;
};

NaturalRiskCurve natural_risk_curve(const model::LinearClassifier& classifier,
                                    const model::GaussianMixture& mixture);

struct ExtremaSummary {
    int interior_maxima = 0;
    std::vector<double> maxima_locations;
    bool local_min_at_half = false;
    bool local_max_at_half = false;
    double symmetry_defect = 0.0;  // max |f(pi) - f(1-pi)| over the grid
};

// Evaluates R_nat(w_adv) or the gap across a pi grid (weights fixed, bias
// re-derived per pi) and counts interior extrema by three-point comparison.
// The grid must be symmetric about 1/2 and contain it.
ExtremaSummary verify_regime_numerically(const model::GaussianMixture& mixture,
                                         const model::ThreatModel& threat,
                                         const Vector& pi_grid, RegimeQuantity which,
                                         const boxqp::SolveOptions& options = {});

// Evaluates the swept quantity at a single prior (exposed for sweep reuse).
double regime_curve_value(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                          double pi_plus, RegimeQuantity which,
                          const boxqp::SolveOptions& options = {});

struct GapBoundTerms {
    double C_sigma_mu = 0.0;   // Hoelder defect ||sign(S^-1 mu)||^2_{S^-1} - ||S^-1 mu||_1^2/||mu||^2_{S^-1}
    double eps_limit_A = 0.0;  // ||mu||^2_{S^-1} / (2 ||S^-1 mu||_1)
    double eps_limit_B = 0.0;  // ||mu||_{S^-1} / (2 sqrt(C)), +inf when C = 0
};

// Balanced mixtures only.
GapBoundTerms gap_bound_terms(const model::GaussianMixture& mixture);

enum class UpperBoundForm { phi_difference, exponential, precise };

// Upper bounds on the gap. All forms need eps <= eps_limit_A; the
// phi_difference and exponential forms additionally need eps <= eps_limit_B.
double gap_upper_bound(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                       UpperBoundForm form);

// Lower bound e^{-||mu||^2/2} C eps^2 / (3 sqrt(2 pi) ||mu||); valid for
// balanced mixtures with diagonal Sigma, min|mu_i| >= eps, eps within both
// limits.
double gap_lower_bound(const model::GaussianMixture& mixture, const model::ThreatModel& threat);

}  // namespace robustmix::analysis
