#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robustmix/model.hpp"

namespace robustmix::boxqp {

using model::Matrix;
using model::Vector;

// Saturation state of one coordinate of z*.
enum class Activity : std::int8_t { lower = -1, interior = 0, upper = +1 };

// |z_i| >= 1 - kActiveSetBand counts as saturated when classifying the
// active set (breakpoint detection needs a band wider than the solver tol).
inline constexpr double kActiveSetBand = 1e-7;

struct BoxQpSolution {
    Vector z_star;
    double objective = 0.0;  // ||mu - eps z*||^2_{Sigma^{-1}}
    std::vector<Activity> active_set;
    double kkt_residual = 0.0;
    long iterations = 0;
};

struct SolveOptions {
    double tol = 1e-10;           // projected-gradient sup-norm target
    long max_iterations = 200000;
    bool nesterov = false;        // accelerated variant, restarts on objective increase
    std::optional<Vector> start;  // feasible starting point override
};

// Iteration cap hit with the projected-gradient norm still above tol.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, BoxQpSolution best_iterate)
        : Error(what), best(std::move(best_iterate)) {}
    BoxQpSolution best;
};

// Minimizes ||mu - eps z||^2_{Sigma^{-1}} over ||z||_inf <= 1 by projected
// gradient descent with fixed step 1/L, L = 2 eps^2 lambda_max(Sigma^{-1}).
// eps = 0 returns z* = 0 by convention. Unique minimizer for eps > 0.
BoxQpSolution solve_zstar(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                          const SolveOptions& options = {});
BoxQpSolution solve_zstar(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                          double tol);

// Exact separable minimizer for diagonal Sigma: z_i = clamp(mu_i/eps, -1, 1)
// (0 when eps = 0). Oracle for solve_zstar.
Vector diagonal_zstar(const Vector& mu, const Vector& sigma_diag, double epsilon);

// Exhaustive evaluation over a uniform grid on [-1,1]^d; d <= 4.
Vector grid_oracle_zstar(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                         int grid_points_per_axis);

std::vector<Activity> classify_active_set(const Vector& z);

// Consecutive grid interval over which the active set of z* changed.
struct BreakpointBracket {
    double eps_lo = 0.0;
    double eps_hi = 0.0;
    std::vector<Activity> before;
    std::vector<Activity> after;
    std::string change;  // e.g. "z[1]: upper -> interior"
};

// Solves at every grid value and reports the intervals where the active set
// changes; these bracket the kinks of the gap-vs-eps curve. The eps = 0 grid
// point is classified by the eps -> 0+ limit (saturation at sign(Sigma^{-1}mu))
// rather than the z* = 0 convention, so a grid starting at zero does not
// produce a spurious first bracket.
std::vector<BreakpointBracket> detect_breakpoints(const model::GaussianMixture& mixture,
                                                  const Vector& eps_grid,
                                                  const SolveOptions& options = {});

}  // namespace robustmix::boxqp
