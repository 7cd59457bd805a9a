#include "robustmix/boxqp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace robustmix::boxqp {

namespace {

const char* activity_name(Activity a) {
    switch (a) {
        case Activity::lower: return "lower";
        case Activity::upper: return "upper";
        default: return "interior";
    }
}

Vector clamp_box(Vector z) {
    return z.cwiseMax(-1.0).cwiseMin(1.0);
}

double box_objective(const Matrix& sigma_inv, const Vector& mu, double eps, const Vector& z) {
    Vector u = mu - eps * z;
    return u.dot(sigma_inv * u);
}

}  // namespace

std::vector<Activity> classify_active_set(const Vector& z) {
    std::vector<Activity> a(static_cast<size_t>(z.size()), Activity::interior);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (z[i] >= 1.0 - kActiveSetBand) a[static_cast<size_t>(i)] = Activity::upper;
        else if (z[i] <= -1.0 + kActiveSetBand) a[static_cast<size_t>(i)] = Activity::lower;
    }
    return a;
}

BoxQpSolution solve_zstar(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                          const SolveOptions& options) {
    const int d = mixture.dim();
    const double eps = threat.epsilon;
    const Vector& mu = mixture.mu();

    if (options.tol <= 0.0) {
        throw DomainError("solve_zstar: tol must be positive");
    }

    if (eps == 0.0) {
        // Any feasible z is optimal; zero keeps w_adv = w_nat exactly.
        BoxQpSolution sol;
        sol.z_star = Vector::Zero(d);
        sol.objective = std::pow(mixture.mahalanobis(mu), 2);
        sol.active_set.assign(static_cast<size_t>(d), Activity::interior);
        return sol;
    }

    // Dense Sigma^{-1}: the iteration is O(d^2) with it cached.
    const Matrix sigma_inv = numerics::spd_solve_matrix(mixture.sigma_factor());

    const double lip = 2.0 * eps * eps * numerics::spd_lambda_max(mixture.sigma_factor());
    const double step = 1.0 / lip;

    Vector z;
    if (options.start) {
        if (options.start->size() != d) {
            throw ShapeError("solve_zstar: start point has wrong dimension");
        }
        z = clamp_box(*options.start);
    } else {
        z = Vector::Zero(d);
    }

    auto gradient = [&](const Vector& at) -> Vector {
        return -2.0 * eps * (sigma_inv * (mu - eps * at));
    };

    Vector y = z;          // Nesterov extrapolation point
    double t_momentum = 1.0;
    double prev_obj = box_objective(sigma_inv, mu, eps, z);

    long iter = 0;
    double pg_norm = std::numeric_limits<double>::infinity();
    for (; iter < options.max_iterations; ++iter) {
        Vector g = gradient(z);
        pg_norm = (z - clamp_box(z - g)).cwiseAbs().maxCoeff();
        if (pg_norm <= options.tol) break;

        if (options.nesterov) {
            Vector z_next = clamp_box(y - step * gradient(y));
            double obj = box_objective(sigma_inv, mu, eps, z_next);
            if (obj > prev_obj) {  // restart momentum
                t_momentum = 1.0;
                z_next = clamp_box(z - step * g);
                obj = box_objective(sigma_inv, mu, eps, z_next);
            }
            double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
            y = z_next + ((t_momentum - 1.0) / t_next) * (z_next - z);
            t_momentum = t_next;
            z = std::move(z_next);
            prev_obj = obj;
        } else {
            z = clamp_box(z - step * g);
        }
    }

    BoxQpSolution sol;
    sol.z_star = z;
    sol.objective = std::pow(mixture.mahalanobis(mu - eps * z), 2);
    sol.active_set = classify_active_set(z);
    sol.iterations = iter;

    // Residual of the first-order conditions: interior coordinates need a
    // vanishing gradient, saturated ones a gradient pointing out of the box.
    Vector g = gradient(z);
    double kkt = 0.0;
    for (int i = 0; i < d; ++i) {
        if (std::abs(z[i]) < 1.0 - options.tol) {
            kkt = std::max(kkt, std::abs(g[i]));
        } else if (z[i] > 0.0) {
            kkt = std::max(kkt, std::max(0.0, g[i]));
        } else {
            kkt = std::max(kkt, std::max(0.0, -g[i]));
        }
    }
    sol.kkt_residual = kkt;

    if (pg_norm > options.tol) {
        throw ConvergenceError("solve_zstar: projected gradient " + std::to_string(pg_norm) +
                                   " above tol after " + std::to_string(iter) + " iterations",
                               std::move(sol));
    }
    return sol;
}

BoxQpSolution solve_zstar(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                          double tol) {
    SolveOptions options;
    options.tol = tol;
    return solve_zstar(mixture, threat, options);
}

Vector diagonal_zstar(const Vector& mu, const Vector& sigma_diag, double epsilon) {
    if (sigma_diag.size() != mu.size()) {
        throw ShapeError("diagonal_zstar: mu and sigma_diag lengths differ");
    }
    if ((sigma_diag.array() <= 0.0).any()) {
        throw DomainError("diagonal_zstar: variances must be positive");
    }
    if (epsilon < 0.0) {
        throw DomainError("diagonal_zstar: epsilon must be >= 0");
    }
    if (epsilon == 0.0) return Vector::Zero(mu.size());
    return clamp_box(mu / epsilon);
}

Vector grid_oracle_zstar(const model::GaussianMixture& mixture, const model::ThreatModel& threat,
                         int grid_points_per_axis) {
    const int d = mixture.dim();
    if (d > 4) {
        throw UnsupportedError("grid_oracle_zstar: dimension " + std::to_string(d) +
                               " exceeds the supported maximum of 4");
    }
    if (grid_points_per_axis < 2) {
        throw DomainError("grid_oracle_zstar: need at least 2 grid points per axis");
    }
    const double eps = threat.epsilon;
    const Matrix sigma_inv = numerics::spd_solve_matrix(mixture.sigma_factor());
    const int g = grid_points_per_axis;

    Vector z = Vector::Constant(d, -1.0);
    std::vector<int> idx(static_cast<size_t>(d), 0);
    Vector best = z;
    double best_obj = box_objective(sigma_inv, mixture.mu(), eps, z);
    for (;;) {
        // odometer advance
        int k = 0;
        while (k < d) {
            if (++idx[static_cast<size_t>(k)] < g) {
                z[k] = -1.0 + 2.0 * idx[static_cast<size_t>(k)] / (g - 1);
                break;
            }
            idx[static_cast<size_t>(k)] = 0;
            z[k] = -1.0;
            ++k;
        }
        if (k == d) break;
        double obj = box_objective(sigma_inv, mixture.mu(), eps, z);
        if (obj < best_obj) {
            best_obj = obj;
            best = z;
        }
    }
    return best;
}

std::vector<BreakpointBracket> detect_breakpoints(const model::GaussianMixture& mixture,
                                                  const Vector& eps_grid,
                                                  const SolveOptions& options) {
    if (eps_grid.size() == 0) {
        throw DomainError("detect_breakpoints: empty epsilon grid");
    }
    for (Eigen::Index i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] >= 0.0) || (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))) {
            throw DomainError("detect_breakpoints: grid must be strictly increasing and >= 0");
        }
    }

    auto active_at = [&](double eps) -> std::vector<Activity> {
        if (eps == 0.0) {
            // eps -> 0+ limit: every coordinate with (Sigma^{-1} mu)_i != 0
            // saturates at its sign.
            Vector v = mixture.sigma_inv(mixture.mu());
            const double zero_band = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
            std::vector<Activity> a(static_cast<size_t>(v.size()), Activity::interior);
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                if (v[i] > zero_band) a[static_cast<size_t>(i)] = Activity::upper;
                else if (v[i] < -zero_band) a[static_cast<size_t>(i)] = Activity::lower;
            }
            return a;
        }
        return solve_zstar(mixture, model::ThreatModel(eps), options).active_set;
    };

    std::vector<BreakpointBracket> brackets;
    std::vector<Activity> prev = active_at(eps_grid[0]);
    for (Eigen::Index i = 1; i < eps_grid.size(); ++i) {
        std::vector<Activity> cur = active_at(eps_grid[i]);
        if (cur != prev) {
            BreakpointBracket b;
            b.eps_lo = eps_grid[i - 1];
            b.eps_hi = eps_grid[i];
            b.before = prev;
            b.after = cur;
            for (size_t k = 0; k < cur.size(); ++k) {
                if (cur[k] != prev[k]) {
                    if (!b.change.empty()) b.change += "; ";
                    b.change += "z[" + std::to_string(k) + "]: " + activity_name(prev[k]) +
                                " -> " + activity_name(cur[k]);
                }
            }
            brackets.push_back(std::move(b));
        }
        prev = std::move(cur);
    }
    return brackets;
}

}  // namespace robustmix::boxqp
