#include "robustmix/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace robustmix::numerics {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kTailFlush = 1e-300;

void require_finite(double x, const char* op) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(op) + ": argument must be finite");
    }
}

}  // namespace

double std_normal_cdf(double x) {
    require_finite(x, "std_normal_cdf");
    // Phi(x) = erfc(-x/sqrt(2))/2. erfc keeps full relative precision in the
    // left tail where the direct 1 - Phi(-x) form would cancel.
    double p = 0.5 * std::erfc(-x * kInvSqrt2);
    if (p < kTailFlush) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

double std_normal_pdf(double x) {
    require_finite(x, "std_normal_pdf");
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

SpdFactor cholesky(const Matrix& matrix) {
    const auto n = matrix.rows();
    if (n == 0 || matrix.cols() != n) {
        throw ShapeError("cholesky: matrix must be square and non-empty");
    }
    const double scale = matrix.cwiseAbs().maxCoeff();
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(scale, 1.0)) {
        throw DomainError("cholesky: matrix is not symmetric");
    }
    const double pivot_floor = 1e-12 * matrix.diagonal().maxCoeff();

    Matrix L = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double pivot = matrix(j, j) - L.row(j).head(j).squaredNorm();
        if (!(pivot > pivot_floor)) {
            throw NotSpdError(
                "cholesky: matrix is not positive definite (pivot " +
                    std::to_string(j) + " = " + std::to_string(pivot) + ")",
                static_cast<int>(j));
        }
        L(j, j) = std::sqrt(pivot);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            L(i, j) = (matrix(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / L(j, j);
        }
    }
    return SpdFactor{std::move(L)};
}

Vector spd_solve(const SpdFactor& factor, const Vector& v) {
    if (v.size() != factor.dimension()) {
        throw ShapeError("spd_solve: vector length " + std::to_string(v.size()) +
                         " does not match dimension " + std::to_string(factor.dimension()));
    }
    Vector y = factor.lower.triangularView<Eigen::Lower>().solve(v);
    return factor.lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

Matrix spd_solve_matrix(const SpdFactor& factor) {
    const int n = factor.dimension();
    Matrix y = factor.lower.triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
    return factor.lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

double mahalanobis_inv_norm(const SpdFactor& factor, const Vector& v) {
    if (v.size() != factor.dimension()) {
        throw ShapeError("mahalanobis_inv_norm: vector length " + std::to_string(v.size()) +
                         " does not match dimension " + std::to_string(factor.dimension()));
    }
    // ||v||_{Sigma^{-1}} = ||L^{-1} v||_2.
    return factor.lower.triangularView<Eigen::Lower>().solve(v).norm();
}

double spd_lambda_max(const SpdFactor& factor) {
    const int n = factor.dimension();
    Vector v = Vector::Ones(n);
    for (int i = 0; i < n; ++i) {
        v[i] += 1e-3 * static_cast<double>(i + 1) / n;  // break symmetric starts
    }
    v.normalize();

    double lambda = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        Vector av = spd_solve(factor, v);
        lambda = v.dot(av);
        if ((av - lambda * v).norm() <= 1e-9 * std::abs(lambda)) {
            return lambda;
        }
        v = av / av.norm();
    }
    return lambda;
}

}  // namespace robustmix::numerics
