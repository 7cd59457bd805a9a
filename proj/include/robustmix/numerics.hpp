#pragma once

#include <Eigen/Dense>

#include "robustmix/errors.hpp"

namespace robustmix::numerics {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Standard normal CDF. Accurate to better than 1e-13 absolute over the whole
// line; values whose tail mass falls below 1e-300 are flushed to exactly 0/1.
double std_normal_cdf(double x);

// Standard normal density exp(-x^2/2)/sqrt(2*pi).
double std_normal_pdf(double x);

// Cholesky factor of a symmetric positive-definite matrix: L lower triangular
// with L L^T equal to the input.
struct SpdFactor {
    Matrix lower;

    int dimension() const { return static_cast<int>(lower.rows()); }

    // Reconstructs L L^T (testing convenience).
    Matrix reconstruct() const { return lower * lower.transpose(); }
};

// Fails with NotSpdError naming the offending pivot when any pivot drops to
// 1e-12 times the largest diagonal entry or below. The input must be symmetric
// to 1e-12 relative asymmetry.
SpdFactor cholesky(const Matrix& matrix);

// Solves (L L^T) x = v by forward/back substitution.
Vector spd_solve(const SpdFactor& factor, const Vector& v);

// Dense Sigma^{-1} (the factored matrix's inverse), for hot loops that apply
// it repeatedly.
Matrix spd_solve_matrix(const SpdFactor& factor);

// sqrt(v^T Sigma^{-1} v) for the factored Sigma; zero iff v = 0.
double mahalanobis_inv_norm(const SpdFactor& factor, const Vector& v);

// Largest eigenvalue of Sigma^{-1} by power iteration on v -> spd_solve(v).
// Deterministic start (all-ones plus a fixed ramp perturbation), 10000
// iteration cap, relative accuracy 1e-8 or better.
double spd_lambda_max(const SpdFactor& factor);

}  // namespace robustmix::numerics
