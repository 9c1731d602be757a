#include "trajdist/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace trajdist {

namespace {

// Euclidean projection of v onto the L1 ball of radius r (Duchi et al. style
// sort-and-threshold).
Vector project_l1_ball(const Vector& v, double r) {
    if (r <= 0.0) return Vector::Zero(v.size());
    const Vector a = v.cwiseAbs();
    if (a.sum() <= r) return v;
    std::vector<double> u(a.data(), a.data() + a.size());
    std::sort(u.begin(), u.end(), std::greater<double>());
    // theta from the largest k with u[k] > (sum_{1..k} - r)/k.
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cum += u[k];
        const double cand = (cum - r) / static_cast<double>(k + 1);
        if (u[k] > cand) theta = cand;
    }
    Vector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::max(std::abs(v[i]) - theta, 0.0);
        out[i] = v[i] >= 0.0 ? mag : -mag;
    }
    return out;
}

// prox_{lambda·||.||_inf}(x) = x - P_{L1 ball of radius lambda}(x).
Vector prox_linf(const Vector& x, double lambda) {
    return x - project_l1_ball(x, lambda);
}

// Projection onto {Y : sum_j max_i |Y_ij| <= c}, the unit ball (radius c) of
// the dual of the max-column-sum norm. Solved by bisection on the Lagrange
// multiplier of the budget constraint; per column the inner problem is the
// L-infinity prox.
Matrix project_dual_colsum_ball(const Matrix& X, double c) {
    const Eigen::Index m = X.rows(), n = X.cols();
    auto budget_used = [&](const Matrix& Y) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) s += Y.col(j).cwiseAbs().maxCoeff();
        return s;
    };
    if (budget_used(X) <= c) return X;
    auto eval = [&](double lambda) {
        Matrix Y(m, n);
        for (Eigen::Index j = 0; j < n; ++j) Y.col(j) = prox_linf(X.col(j), lambda);
        return Y;
    };
    double lo = 0.0, hi = 1.0;
    while (budget_used(eval(hi)) > c) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (budget_used(eval(mid)) > c ? lo : hi) = mid;
    }
    return eval(hi);
}

}  // namespace

double matrix_norm(const Matrix& X, MatrixNorm norm) {
    if (X.size() == 0) return 0.0;
    switch (norm) {
        case MatrixNorm::colsum: return X.cwiseAbs().colwise().sum().maxCoeff();
        case MatrixNorm::entrywise: return X.cwiseAbs().sum();
    }
    return 0.0;
}

Matrix norm_prox(const Matrix& X, MatrixNorm norm, double c) {
    if (c < 0.0) throw InvalidInput("norm_prox: negative scale");
    if (c == 0.0) return X;
    switch (norm) {
        case MatrixNorm::entrywise: {
            // Soft threshold.
            return X.unaryExpr([c](double v) {
                const double mag = std::max(std::abs(v) - c, 0.0);
                return v >= 0.0 ? mag : -mag;
            });
        }
        case MatrixNorm::colsum:
            // Moreau decomposition against the dual-norm ball of radius c.
            return X - project_dual_colsum_ball(X, c);
    }
    return X;
}

Matrix project_affine_doubly_stochastic(const Matrix& X) {
    if (X.rows() != X.cols()) throw InvalidInput("project_affine_doubly_stochastic: square matrix required");
    const double m = static_cast<double>(X.rows());
    const Vector r = X.rowwise().sum() - Vector::Ones(X.rows());
    const Vector c = X.colwise().sum().transpose() - Vector::Ones(X.cols());
    const double s = X.sum() - m;
    const Vector a = (-r.array() + s / (2.0 * m)) / m;
    const Vector b = (-c.array() + s / (2.0 * m)) / m;
    return X + a * Eigen::RowVectorXd::Ones(X.cols()) + Vector::Ones(X.rows()) * b.transpose();
}

Matrix project_doubly_stochastic(const Matrix& X, double eps, int max_sweeps,
                                 const std::vector<std::vector<char>>* zero_pattern) {
    if (X.rows() != X.cols()) throw InvalidInput("project_doubly_stochastic: square matrix required");
    Matrix y = X;
    Matrix p = Matrix::Zero(X.rows(), X.cols());  // Dykstra correction for the box set
    auto clamp = [&](Matrix& v) {
        v = v.cwiseMax(0.0);
        if (zero_pattern != nullptr)
            for (Eigen::Index i = 0; i < v.rows(); ++i)
                for (Eigen::Index j = 0; j < v.cols(); ++j)
                    if ((*zero_pattern)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) v(i, j) = 0.0;
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        // Affine set needs no correction term (projections onto affine sets
        // keep Dykstra equal to plain alternating projections on that set).
        y = project_affine_doubly_stochastic(y);
        Matrix z = y + p;
        Matrix clamped = z;
        clamp(clamped);
        p = z - clamped;
        y = clamped;
        if (doubly_stochastic_residual(y) < eps) return y;
    }
    return y;
}

double doubly_stochastic_residual(const Matrix& X) {
    if (X.size() == 0) return 0.0;
    const double row = (X.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double col = (X.colwise().sum().array() - 1.0).abs().maxCoeff();
    const double neg = std::max(0.0, -X.minCoeff());
    return std::max({row, col, neg});
}

Matrix random_doubly_stochastic(std::size_t m, std::uint64_t seed, int n_perms) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix W = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0;
    for (int k = 0; k < n_perms; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        const double w = u(rng) + 1e-3;
        for (std::size_t i = 0; i < m; ++i)
            W(static_cast<Eigen::Index>(i), perm[i]) += w;
        total += w;
    }
    return W / total;
}

}  // namespace trajdist
