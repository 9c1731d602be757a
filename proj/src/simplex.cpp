#include "trajdist/simplex.hpp"

#include <cmath>
#include <vector>

namespace trajdist {

namespace {

constexpr double kEps = 1e-9;

// Tableau rows: one per constraint, columns: structural + slack + artificial
// variables, plus the right-hand side as the last column. The objective row
// is kept separately.
struct Tableau {
    Matrix t;                 // n_rows x (n_cols + 1)
    Vector obj;               // reduced objective row, size n_cols + 1 (last = -value)
    std::vector<int> basis;   // basic variable per row

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (Eigen::Index r = 0; r < t.rows(); ++r)
            if (r != row && std::abs(t(r, col)) > 0.0) t.row(r) -= t(r, col) * t.row(row);
        if (std::abs(obj[col]) > 0.0) obj -= obj[col] * t.row(row).transpose();
        basis[static_cast<std::size_t>(row)] = col;
    }

    // Bland's rule: entering = lowest-index column with negative reduced
    // cost; leaving = lowest basis index among minimum-ratio rows.
    // Returns false at optimality; throws on unboundedness.
    bool step(bool* unbounded) {
        const Eigen::Index n_cols = t.cols() - 1;
        int enter = -1;
        for (Eigen::Index c = 0; c < n_cols; ++c)
            if (obj[c] < -kEps) { enter = static_cast<int>(c); break; }
        if (enter < 0) return false;
        int leave = -1;
        double best_ratio = 0.0;
        for (Eigen::Index r = 0; r < t.rows(); ++r) {
            if (t(r, enter) <= kEps) continue;
            const double ratio = t(r, n_cols) / t(r, enter);
            if (leave < 0 || ratio < best_ratio - kEps ||
                (ratio < best_ratio + kEps && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                leave = static_cast<int>(r);
                best_ratio = ratio;
            }
        }
        if (leave < 0) {
            *unbounded = true;
            return false;
        }
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
    const Eigen::Index n = lp.n_vars();
    const Eigen::Index n_eq = lp.b_eq.size();
    const Eigen::Index n_ub = lp.b_ub.size();
    const Eigen::Index n_rows = n_eq + n_ub;
    const Eigen::Index n_slack = n_ub;
    const Eigen::Index n_art = n_rows;
    const Eigen::Index n_cols = n + n_slack + n_art;

    Tableau tab;
    tab.t = Matrix::Zero(n_rows, n_cols + 1);
    tab.basis.assign(static_cast<std::size_t>(n_rows), 0);

    for (Eigen::Index r = 0; r < n_eq; ++r) {
        tab.t.row(r).head(n) = lp.a_eq.row(r);
        tab.t(r, n_cols) = lp.b_eq[r];
    }
    for (Eigen::Index r = 0; r < n_ub; ++r) {
        tab.t.row(n_eq + r).head(n) = lp.a_ub.row(r);
        tab.t(n_eq + r, n + r) = 1.0;
        tab.t(n_eq + r, n_cols) = lp.b_ub[r];
    }
    // Nonnegative right-hand sides before adding artificials.
    for (Eigen::Index r = 0; r < n_rows; ++r)
        if (tab.t(r, n_cols) < 0.0) tab.t.row(r) *= -1.0;
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        tab.t(r, n + n_slack + r) = 1.0;
        tab.basis[static_cast<std::size_t>(r)] = static_cast<int>(n + n_slack + r);
    }

    // Phase 1: minimize the sum of artificials.
    tab.obj = Vector::Zero(n_cols + 1);
    for (Eigen::Index r = 0; r < n_rows; ++r) tab.obj -= tab.t.row(r).transpose();
    for (Eigen::Index r = 0; r < n_rows; ++r) tab.obj[n + n_slack + r] = 0.0;

    LpSolution sol;
    bool unbounded = false;
    while (tab.step(&unbounded)) {}
    if (-tab.obj[n_cols] > 1e-7) {
        sol.status = LpStatus::infeasible;
        return sol;
    }
    // Drive any artificial still in the basis out (or its row is redundant).
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        if (tab.basis[static_cast<std::size_t>(r)] < n + n_slack) continue;
        int enter = -1;
        for (Eigen::Index c = 0; c < n + n_slack; ++c)
            if (std::abs(tab.t(r, c)) > kEps) { enter = static_cast<int>(c); break; }
        if (enter >= 0) tab.pivot(static_cast<int>(r), enter);
    }

    // Phase 2: the real objective, reduced against the current basis.
    tab.obj = Vector::Zero(n_cols + 1);
    tab.obj.head(n) = lp.c;
    for (Eigen::Index c = n + n_slack; c < n_cols; ++c) tab.obj[c] = 1e30;  // keep artificials out
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        const int b = tab.basis[static_cast<std::size_t>(r)];
        if (std::abs(tab.obj[b]) > 0.0) tab.obj -= tab.obj[b] * tab.t.row(r).transpose();
    }
    unbounded = false;
    while (tab.step(&unbounded)) {}
    if (unbounded) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    sol.x = Vector::Zero(n);
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        const int b = tab.basis[static_cast<std::size_t>(r)];
        if (b < n) sol.x[b] = tab.t(r, n_cols);
    }
    sol.objective = lp.c.dot(sol.x);
    return sol;
}

}  // namespace trajdist
