#include "trajdist/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace trajdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Jonker-Volgenant style shortest augmenting path solver. Fills row_to_col
// and the optimal dual potentials u (rows), v (columns).
void jv_solve(const Matrix& cost, std::vector<int>& row_to_col,
              std::vector<double>& u, std::vector<double>& v) {
    const int n = static_cast<int>(cost.rows());
    u.assign(static_cast<std::size_t>(n) + 1, 0.0);
    v.assign(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);    // p[j]: row matched to column j (1-based)
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    row_to_col.assign(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (p[static_cast<std::size_t>(j)] > 0)
            row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
}

// Kuhn augmenting-path matching restricted to `allowed` edges, skipping rows
// already fixed. Returns true when every free row can be matched.
bool try_complete_matching(const std::vector<std::vector<char>>& allowed,
                           std::vector<int>& match_col,  // col -> row, -1 free
                           const std::vector<char>& row_fixed, int n) {
    std::vector<int> match_row(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < n; ++j)
        if (match_col[static_cast<std::size_t>(j)] >= 0)
            match_row[static_cast<std::size_t>(match_col[static_cast<std::size_t>(j)])] = j;

    std::vector<char> visited;
    // DFS augmenting path from row r.
    std::function<bool(int)> augment = [&](int r) -> bool {
        for (int j = 0; j < n; ++j) {
            if (!allowed[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] ||
                visited[static_cast<std::size_t>(j)])
                continue;
            visited[static_cast<std::size_t>(j)] = 1;
            const int other = match_col[static_cast<std::size_t>(j)];
            if (other < 0 || (!row_fixed[static_cast<std::size_t>(other)] && augment(other))) {
                match_col[static_cast<std::size_t>(j)] = r;
                match_row[static_cast<std::size_t>(r)] = j;
                return true;
            }
        }
        return false;
    };

    for (int r = 0; r < n; ++r) {
        if (row_fixed[static_cast<std::size_t>(r)] || match_row[static_cast<std::size_t>(r)] >= 0) continue;
        visited.assign(static_cast<std::size_t>(n), 0);
        if (!augment(r)) return false;
    }
    return true;
}

}  // namespace

AssignmentResult solve_assignment(const Matrix& cost) {
    if (cost.rows() != cost.cols()) throw InvalidInput("solve_assignment: matrix must be square");
    const int n = static_cast<int>(cost.rows());
    AssignmentResult res;
    if (n == 0) return res;

    std::vector<int> row_to_col;
    std::vector<double> u, v;
    jv_solve(cost, row_to_col, u, v);

    // Complementary slackness: every optimal assignment lives on the tight
    // edges of the optimal duals. Pick the lexicographically smallest perfect
    // matching within that subgraph.
    double scale = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(cost(i, j)));
    const double tie_eps = 1e-9 * scale;

    std::vector<std::vector<char>> tight(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::abs(cost(i, j) - u[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(j + 1)]) <= tie_eps;

    std::vector<int> match_col(static_cast<std::size_t>(n), -1);  // col -> row
    std::vector<char> row_fixed(static_cast<std::size_t>(n), 0);
    std::vector<int> lex(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (int j = 0; j < n && !placed; ++j) {
            if (!tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ||
                match_col[static_cast<std::size_t>(j)] >= 0)
                continue;
            // Tentatively fix (i, j); keep it when the rest still matches.
            match_col[static_cast<std::size_t>(j)] = i;
            row_fixed[static_cast<std::size_t>(i)] = 1;
            std::vector<int> trial = match_col;
            if (try_complete_matching(tight, trial, row_fixed, n)) {
                match_col = trial;
                lex[static_cast<std::size_t>(i)] = j;
                placed = true;
            } else {
                match_col[static_cast<std::size_t>(j)] = -1;
                row_fixed[static_cast<std::size_t>(i)] = 0;
            }
        }
        if (!placed) {
            // Tolerance too sharp for this instance; fall back to the JV matching.
            lex = row_to_col;
            break;
        }
        // Re-derive non-fixed matches from scratch next round; only fixed rows persist.
        std::vector<int> cleaned(static_cast<std::size_t>(n), -1);
        for (int r = 0; r <= i; ++r)
            cleaned[static_cast<std::size_t>(lex[static_cast<std::size_t>(r)])] = r;
        match_col = cleaned;
    }

    res.row_to_col = lex;
    res.cost = 0.0;
    for (int i = 0; i < n; ++i) res.cost += cost(i, res.row_to_col[static_cast<std::size_t>(i)]);
    return res;
}

}  // namespace trajdist
