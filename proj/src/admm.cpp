#include "trajdist/admm.hpp"

#include "trajdist/assignment.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <deque>
#include <limits>

namespace trajdist {

namespace {

using Eigen::Index;

// Frames are stored vectorized: column t of an (m*m, T) matrix is the
// column-major flattening of the m x m frame-t matrix.
Eigen::Map<Matrix> frame(Matrix& s, Index m, Index t) {
    return Eigen::Map<Matrix>(s.col(t).data(), m, m);
}
Eigen::Map<const Matrix> frame(const Matrix& s, Index m, Index t) {
    return Eigen::Map<const Matrix>(s.col(t).data(), m, m);
}

// In-place projection of every frame onto {Y : Y1 = 1, Y^T 1 = 1}.
void project_affine_all(Matrix& s, Index m) {
    const double mm = static_cast<double>(m);
    for (Index t = 0; t < s.cols(); ++t) {
        auto x = frame(s, m, t);
        const Vector r = x.rowwise().sum() - Vector::Ones(m);
        const Vector c = x.colwise().sum().transpose() - Vector::Ones(m);
        const double tot = x.sum() - mm;
        const Vector a = (-r.array() + tot / (2.0 * mm)) / mm;
        const Vector b = (-c.array() + tot / (2.0 * mm)) / mm;
        x += a * Eigen::RowVectorXd::Ones(m) + Vector::Ones(m) * b.transpose();
    }
}

double switch_sum(const Matrix& z, Index m, MatrixNorm norm, double alpha) {
    if (alpha == 0.0 || z.cols() < 2) return 0.0;
    double s = 0.0;
    if (norm == MatrixNorm::entrywise) {
        for (Index t = 0; t + 1 < z.cols(); ++t) s += (z.col(t + 1) - z.col(t)).cwiseAbs().sum();
    } else {
        for (Index t = 0; t + 1 < z.cols(); ++t) {
            const Matrix d = frame(z, m, t + 1) - frame(z, m, t);
            s += matrix_norm(d, norm);
        }
    }
    return alpha * s;
}

}  // namespace

AdmmResult admm_solve(const DistanceMatrixSequence& dmats, const AdmmOptions& opts) {
    const Index T = static_cast<Index>(dmats.t_len());
    const Index m = static_cast<Index>(dmats.m());
    AdmmResult res;
    if (T == 0 || m == 0) {
        res.converged = true;
        return res;
    }
    if (opts.alpha < 0.0 || !(opts.tol > 0.0)) throw InvalidInput("admm_solve: bad parameters");
    const Index m2 = m * m;
    const Index E = T - 1;

    // Long horizons: solve a temporally coarsened copy first (block sums of
    // the costs, one weight matrix per block, same switching charge) and
    // refine its prolongation at full resolution. The coarse restriction is
    // tight because optimal weights drift slowly from frame to frame, and it
    // cuts the distance the full-resolution iterates have to travel.
    if (opts.warm_start == nullptr && opts.zero_pattern == nullptr && T >= 192) {
        const Index L = 8;
        const Index Tc = (T + L - 1) / L;
        DistanceMatrixSequence coarse;
        coarse.matrices.reserve(static_cast<std::size_t>(Tc));
        for (Index b = 0; b < Tc; ++b) {
            Matrix S = Matrix::Zero(m, m);
            for (Index t = b * L; t < std::min(T, (b + 1) * L); ++t)
                S += dmats.matrices[static_cast<std::size_t>(t)];
            coarse.matrices.push_back(std::move(S));
        }
        AdmmOptions copts = opts;
        copts.max_iter = std::max(opts.max_iter, 2500);
        const AdmmResult cres = admm_solve(coarse, copts);
        std::vector<Matrix> warm(static_cast<std::size_t>(T));
        for (Index t = 0; t < T; ++t)
            warm[static_cast<std::size_t>(t)] = cres.weights[static_cast<std::size_t>(t / L)];
        AdmmOptions fopts = opts;
        fopts.warm_start = &warm;
        return admm_solve(dmats, fopts);
    }

    Matrix D(m2, T);
    for (Index t = 0; t < T; ++t)
        D.col(t) = Eigen::Map<const Vector>(dmats.matrices[static_cast<std::size_t>(t)].data(), m2);

    double rho = opts.rho > 0.0 ? opts.rho : std::max(1e-6, 3.0 * D.cwiseAbs().mean());

    // Mask of entries forbidden by the zero pattern, and a cost large enough
    // that no optimal assignment uses a masked entry unless it has to.
    const double big = (D.cwiseAbs().maxCoeff() + 1.0) * static_cast<double>(m + 1);
    auto masked = [&](Matrix c, Index t) {
        if (opts.zero_pattern != nullptr) {
            const auto& pat = (*opts.zero_pattern)[static_cast<std::size_t>(t)];
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < m; ++j)
                    if (pat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) c(i, j) = big;
        }
        return c;
    };
    auto pattern_ok = [&](const Matrix& z) {
        if (opts.zero_pattern == nullptr) return true;
        for (Index t = 0; t < T; ++t) {
            const auto& pat = (*opts.zero_pattern)[static_cast<std::size_t>(t)];
            const auto zf = frame(z, m, t);
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < m; ++j)
                    if (pat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] && zf(i, j) != 0.0)
                        return false;
        }
        return true;
    };
    auto objective_at = [&](const Matrix& z) {
        return D.cwiseProduct(z).sum() + switch_sum(z, m, opts.norm, opts.alpha);
    };

    // Two exactly feasible starting candidates: per-frame optimal assignments
    // (best when switching is cheap) and one constant assignment optimal for
    // the summed costs (best when switching is expensive). The better one
    // seeds both the iterates and the returned value, so the solver can never
    // come back with something worse than these.
    Matrix cand1 = Matrix::Zero(m2, T), cand2 = Matrix::Zero(m2, T);
    {
        Matrix sumD = Matrix::Zero(m, m);
        for (Index t = 0; t < T; ++t) {
            const Matrix c = masked(frame(D, m, t), t);
            const auto a = solve_assignment(c);
            auto z1 = frame(cand1, m, t);
            for (Index i = 0; i < m; ++i) z1(i, a.row_to_col[static_cast<std::size_t>(i)]) = 1.0;
            sumD += c;
        }
        const auto a = solve_assignment(sumD);
        for (Index t = 0; t < T; ++t) {
            auto z2 = frame(cand2, m, t);
            for (Index i = 0; i < m; ++i) z2(i, a.row_to_col[static_cast<std::size_t>(i)]) = 1.0;
        }
    }
    Matrix best;
    double best_pobj = std::numeric_limits<double>::infinity();
    for (const Matrix* c : {&cand1, &cand2}) {
        if (!pattern_ok(*c)) continue;
        const double v = objective_at(*c);
        if (v < best_pobj) {
            best_pobj = v;
            best = *c;
        }
    }

    Matrix Z(m2, T);
    if (opts.warm_start != nullptr && static_cast<Index>(opts.warm_start->size()) == T) {
        for (Index t = 0; t < T; ++t)
            Z.col(t) = Eigen::Map<const Vector>((*opts.warm_start)[static_cast<std::size_t>(t)].data(), m2);
        if (pattern_ok(Z)) {
            const double v = objective_at(Z);
            if (v < best_pobj) {
                best_pobj = v;
                best = Z;
            }
        }
    } else if (best.size() > 0) {
        Z = best;
    } else {
        Z.setConstant(1.0 / static_cast<double>(m));
    }
    Matrix W = Z, N = Z;
    Matrix Uw = Matrix::Zero(m2, T), Un = Matrix::Zero(m2, T);
    Matrix V(m2, std::max<Index>(E, 0)), Uv = Matrix::Zero(m2, std::max<Index>(E, 0));
    for (Index t = 0; t < E; ++t) V.col(t) = Z.col(t + 1) - Z.col(t);

    // Z-step normal equations: (2I + Delta^T Delta) z = rhs, one tridiagonal
    // system per matrix entry, identical coefficients for all entries. The
    // Thomas factorization scalars depend only on T.
    Vector denom(T), csup(T);
    {
        auto diag = [&](Index t) {
            if (T == 1) return 2.0;
            return (t == 0 || t == T - 1) ? 3.0 : 4.0;
        };
        denom[0] = diag(0);
        csup[0] = -1.0 / denom[0];
        for (Index t = 1; t < T; ++t) {
            denom[t] = diag(t) + csup[t - 1];
            csup[t] = -1.0 / denom[t];
        }
    }

    auto apply_pattern = [&](Matrix& s) {
        if (opts.zero_pattern == nullptr) return;
        for (Index t = 0; t < T; ++t) {
            const auto& pat = (*opts.zero_pattern)[static_cast<std::size_t>(t)];
            auto x = frame(s, m, t);
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < m; ++j)
                    if (pat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) x(i, j) = 0.0;
        }
    };

    Matrix rhs(m2, T), dsweep(m2, T), Zprev(m2, T), proj(m2, T);
    std::deque<double> pobj_window;
    res.trace.reserve(static_cast<std::size_t>(opts.max_iter));

    int it = 0;
    for (; it < opts.max_iter; ++it) {
        // W-block: distance term + affine doubly stochastic constraints.
        W = Z - Uw - D / rho;
        project_affine_all(W, m);

        // N-block: nonnegativity (and the forced-zero pattern).
        N = (Z - Un).cwiseMax(0.0);
        apply_pattern(N);

        // V-block: norm prox on each temporal difference.
        const double prox_scale = opts.alpha / rho;
        for (Index t = 0; t < E; ++t) {
            if (opts.alpha == 0.0) {
                V.col(t) = Z.col(t + 1) - Z.col(t) - Uv.col(t);
            } else if (opts.norm == MatrixNorm::entrywise) {
                V.col(t) = (Z.col(t + 1) - Z.col(t) - Uv.col(t)).unaryExpr([prox_scale](double v) {
                    const double mag = std::abs(v) - prox_scale;
                    return mag > 0.0 ? (v >= 0.0 ? mag : -mag) : 0.0;
                });
            } else {
                Vector g = Z.col(t + 1) - Z.col(t) - Uv.col(t);
                const Matrix gm = Eigen::Map<const Matrix>(g.data(), m, m);
                const Matrix pv = norm_prox(gm, opts.norm, prox_scale);
                V.col(t) = Eigen::Map<const Vector>(pv.data(), m2);
            }
        }

        // Over-relaxation: mix each block output with the current consensus
        // point; damps the oscillation consensus ADMM is prone to.
        const double gamma = opts.over_relax;
        W = gamma * W + (1.0 - gamma) * Z;
        N = gamma * N + (1.0 - gamma) * Z;
        for (Index t = 0; t < E; ++t)
            V.col(t) = gamma * V.col(t) + (1.0 - gamma) * (Z.col(t + 1) - Z.col(t));

        // Z-block: average the copies, Thomas solve along time per entry.
        Zprev = Z;
        rhs = (W + Uw) + (N + Un);
        if (E > 0) {
            rhs.col(0) -= V.col(0) + Uv.col(0);
            for (Index t = 1; t < T - 1; ++t)
                rhs.col(t) += (V.col(t - 1) + Uv.col(t - 1)) - (V.col(t) + Uv.col(t));
            rhs.col(T - 1) += V.col(E - 1) + Uv.col(E - 1);
        }
        dsweep.col(0) = rhs.col(0) / denom[0];
        for (Index t = 1; t < T; ++t)
            dsweep.col(t) = (rhs.col(t) + dsweep.col(t - 1)) / denom[t];
        Z.col(T - 1) = dsweep.col(T - 1);
        for (Index t = T - 2; t >= 0; --t)
            Z.col(t) = dsweep.col(t) - csup[t] * Z.col(t + 1);

        // Scaled dual ascent.
        Uw += W - Z;
        Un += N - Z;
        double prim_sq = (W - Z).squaredNorm() + (N - Z).squaredNorm();
        for (Index t = 0; t < E; ++t) {
            const Vector dz = Z.col(t + 1) - Z.col(t);
            Uv.col(t) += V.col(t) - dz;
            prim_sq += (V.col(t) - dz).squaredNorm();
        }
        const double primal = std::sqrt(prim_sq);
        const double dual = rho * (Z - Zprev).norm();

        const double obj = D.cwiseProduct(Z).sum() + switch_sum(Z, m, opts.norm, opts.alpha);
        res.trace.push_back({it + 1, obj, primal, dual});

        // The objective at the still-infeasible Z oscillates around the
        // optimum and is useless on its own, so every 10 iterations evaluate
        // the true objective at the Birkhoff projection of Z. The best
        // feasible point seen is kept and returned at the end. The run stops
        // once both residuals are small and the projected objective has been
        // stable across a 5-check window: a single-step comparison misses the
        // slow creep phase where each step is tiny but progress accumulates.
        if ((it + 1) % 10 == 0) {
            for (Index t = 0; t < T; ++t) {
                const std::vector<std::vector<char>>* pat =
                    opts.zero_pattern != nullptr ? &(*opts.zero_pattern)[static_cast<std::size_t>(t)]
                                                 : nullptr;
                const Matrix pr =
                    project_doubly_stochastic(frame(Z, m, t), opts.eps_feas * 0.5, 100, pat);
                proj.col(t) = Eigen::Map<const Vector>(pr.data(), m2);
            }
            const double pobj = objective_at(proj);
            if (pobj < best_pobj) {
                best_pobj = pobj;
                best = proj;
            }
            pobj_window.push_back(pobj);
            if (pobj_window.size() > 5) pobj_window.pop_front();
            const double dual_scale =
                rho * std::sqrt(Uw.squaredNorm() + Un.squaredNorm() + Uv.squaredNorm());
            if (primal <= 0.5 * opts.tol * std::max(1.0, Z.norm()) &&
                dual <= 0.5 * opts.tol * std::max(1.0, dual_scale) && pobj_window.size() == 5) {
                const auto [lo, hi] = std::minmax_element(pobj_window.begin(), pobj_window.end());
                if (*hi - *lo <= 0.1 * opts.tol * std::max(1.0, std::abs(pobj))) {
                    res.converged = true;
                    ++it;
                    break;
                }
            }
        }

        // Residual balancing keeps the two residuals within an order of
        // magnitude of each other.
        if ((it + 1) % 10 == 0 && it + 1 < opts.max_iter) {
            if (primal > 10.0 * dual && dual > 0.0) {
                rho *= 2.0;
                Uw /= 2.0;
                Un /= 2.0;
                Uv /= 2.0;
            } else if (dual > 10.0 * primal && primal > 0.0) {
                rho /= 2.0;
                Uw *= 2.0;
                Un *= 2.0;
                Uv *= 2.0;
            }
        }
    }
    res.iterations = it;

    // Exact feasibility for the caller: project every frame onto the Birkhoff
    // polytope (honoring the zero pattern) and report the objective there. If
    // an earlier iterate (or a starting candidate) gave a better feasible
    // point, return that one instead, re-projected at full precision since
    // the in-loop bookkeeping uses a capped projection.
    auto full_project = [&](Matrix& s) {
        for (Index t = 0; t < T; ++t) {
            const std::vector<std::vector<char>>* pat =
                opts.zero_pattern != nullptr ? &(*opts.zero_pattern)[static_cast<std::size_t>(t)]
                                             : nullptr;
            const Matrix pr = project_doubly_stochastic(frame(s, m, t), opts.eps_feas * 0.5, 100000, pat);
            s.col(t) = Eigen::Map<const Vector>(pr.data(), m2);
        }
    };
    Matrix P = Z;
    full_project(P);
    double final_obj = objective_at(P);
    if (best_pobj < final_obj) {
        full_project(best);
        const double refined = objective_at(best);
        if (refined < final_obj) {
            P = best;
            final_obj = refined;
        }
    }
    res.weights.resize(static_cast<std::size_t>(T));
    for (Index t = 0; t < T; ++t) res.weights[static_cast<std::size_t>(t)] = frame(P, m, t);
    res.dist_term = D.cwiseProduct(P).sum();
    res.swi_term = switch_sum(P, m, opts.norm, opts.alpha);
    res.objective = res.dist_term + res.swi_term;
    return res;
}

std::string trace_csv(const std::vector<AdmmTracePoint>& trace) {
    std::string out = "iter,objective,primal_residual,dual_residual\n";
    char buf[128];
    for (const auto& p : trace) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", p.iter, p.objective,
                      p.primal_residual, p.dual_residual);
        out += buf;
    }
    return out;
}

}  // namespace trajdist
