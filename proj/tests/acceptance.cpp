// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.
#include "trajdist/assignment.hpp"
#include "trajdist/comp.hpp"
#include "trajdist/exact.hpp"
#include "trajdist/lp.hpp"
#include "trajdist/norms.hpp"
#include "trajdist/simplex.hpp"
#include "trajdist/synthgen.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace trajdist;

namespace {

struct Gate {
    int failed = 0;

    template <typename F>
    void criterion(int n, const std::string& what, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = f(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %2d  [%7.1fs]  %s%s%s\n", ok ? "PASS" : "FAIL", n, secs,
                    what.c_str(), detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }
};

Trajectory traj1d(const std::vector<double>& vals) {
    Trajectory tr;
    for (std::size_t t = 0; t < vals.size(); ++t) {
        Vector x(1);
        x << vals[t];
        tr.set(static_cast<int>(t) + 1, x);
    }
    return tr;
}

TrajectorySet set_of(std::vector<Trajectory> trs) {
    TrajectorySet s;
    s.trajectories = std::move(trs);
    return s;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// --- criterion 1: documented example values -------------------------------

bool run_examples(std::string& detail) {
    const double eps = 1e-9;
    const auto s1a = set_of({traj1d({-1.0, -0.6, -0.2, 0.2, 0.6, 1.0})});
    const auto s1b = set_of({traj1d({-0.9, -0.54, -0.18, 0.18, 0.54, 0.9})});
    if (!near(ospa(s1a, s1b, ExtendedMetricParams(10.0)).value, 0.36, eps)) {
        detail = "example 1 ospa != 0.36";
        return false;
    }

    Trajectory a2;
    {
        Vector x(1);
        x << 0.0;
        a2.set(1, x);
        x << 1.0;
        a2.set(2, x);
    }
    Trajectory b2;
    {
        Vector x(1);
        x << 0.0;
        b2.set(1, x);
        x << 0.0;
        b2.set(2, x);
        x << 0.0;
        b2.set(3, x);
    }
    if (!near(ospa(set_of({a2}), set_of({b2}), ExtendedMetricParams(0.1)).value, 0.3, eps)) {
        detail = "example 2 ospa(M=0.1) != 0.3";
        return false;
    }

    const auto s3a = set_of({traj1d({-1.0, -0.6, -0.2, 0.2, 0.6, 1.0}),
                             traj1d({1.0, 0.6, 0.2, -0.2, -0.6, -1.0})});
    const auto s3b = set_of({traj1d({0.86, 0.46, 0.06, -0.34, -0.74, -0.86}),
                             traj1d({-0.86, -0.46, -0.06, 0.34, 0.74, 0.86})});
    const auto r3 = ospa(s3a, s3b, ExtendedMetricParams(10.0));
    if (!near(r3.value, 1.68, eps)) {
        detail = "example 3 ospa != 1.68";
        return false;
    }
    double same_pair = 0.0;  // raw cost of the identity pairing, for contrast
    {
        const auto pair = extend_pair(s3a, s3b);
        const auto dmats = distance_matrices(pair, ExtendedMetricParams(10.0));
        for (const auto& D : dmats.matrices) same_pair += D(0, 0) + D(1, 1);
    }
    if (!near(same_pair, 6.40, 1e-9)) {
        detail = "example 3 identity pairing raw sum != 6.40";
        return false;
    }

    const auto A = set_of({traj1d({1, .6, .2, -.2, -.6, -1}), traj1d({-1, -.6, -.2, .2, .6, 1})});
    const auto B = set_of({traj1d({1, .6, .2, .2, .6, 1}), traj1d({-1, -.6, -.2, -.2, -.6, -1})});
    const auto C = set_of({traj1d({0, 0, 0, 0, 0, 0}), traj1d({0, 0, 0, 0, 0, 0})});
    const ExtendedMetricParams P(10.0);
    if (!near(ospa(A, B, P).value, 7.2, eps) || !near(ospa(A, C, P).value, 7.2, eps) ||
        !near(ospa(B, C, P).value, 7.2, eps)) {
        detail = "example 4 ospa values != 7.2";
        return false;
    }
    const auto mab = motp(A, B, 0.19, P);
    if (!near(mab.value, 0.0, eps)) {
        detail = "example 4 motp(A,B;thr=0.19) != 0";
        return false;
    }
    for (std::size_t t = 0; t < 6; ++t) {
        const int want = t < 3 ? 1 : 2;  // ((1,2),(1,2),(1,2),(2,1),(2,1),(2,1))
        if (mab.association.sigma.seq[t][0] != want) {
            detail = "example 4 motp association sequence mismatch at t=" + std::to_string(t + 1);
            return false;
        }
    }
    if (!near(motp(A, C, 0.19, P).value, 7.2, eps) || !near(motp(B, C, 0.19, P).value, 7.2, eps)) {
        detail = "example 4 motp(*,C;thr=0.19) != 7.2";
        return false;
    }
    return true;
}

// --- criteria 2 and 3: the crossing construction --------------------------

bool run_motp_triangle(std::string& detail) {
    const int T = 100;
    const auto ex = build_crossing_example(1.5, T);
    const ExtendedMetricParams P(10.0 * ex.scale);
    const double ab = motp(ex.A, ex.B, 1.5, P).value;
    const double ac = motp(ex.A, ex.C, 1.5, P).value;
    const double cb = motp(ex.C, ex.B, 1.5, P).value;
    char buf[128];
    std::snprintf(buf, sizeof buf, "motp/T: A,B=%.4f A,C=%.4f C,B=%.4f", ab / T, ac / T, cb / T);
    detail = buf;
    return ab / T > 2.0 * (T - 12.0) / T * ex.scale && ac / T < 8.5 / T * ex.scale &&
           cb / T < 8.5 / T * ex.scale && ab > ac + cb;
}

bool run_anchoring_tradeoff(std::string& detail) {
    const int T = 100;
    const auto ex = build_crossing_example(1.5, T);
    const ExtendedMetricParams P(10.0 * ex.scale);
    const auto pair = extend_pair(ex.A, ex.B);
    const auto assoc = clear_mot_association(pair, 1.5, P);
    const auto sd = swi_dist(assoc.sigma, pair, P);
    if (sd.swi != 1.0 / (T - 1.0)) {
        detail = "swi(anchored) != 1/99 exactly";
        return false;
    }
    if (!(sd.dist > 2.0 * (1.0 - 12.0 / T) * ex.scale)) {
        detail = "dist(anchored) not > 2(1-12/T)";
        return false;
    }
    PermutationSequence constant;
    constant.seq.assign(T, Permutation::identity(pair.m));
    auto sd0 = swi_dist(constant, pair, P);
    PermutationSequence swapped;
    swapped.seq.assign(T, Permutation(std::vector<int>{2, 1}));
    const auto sd1 = swi_dist(swapped, pair, P);
    if (sd1.dist < sd0.dist) sd0 = sd1;  // the better constant association
    if (sd0.swi != 0.0 || !(sd0.dist < 12.0 * 7.5 / T * ex.scale)) {
        detail = "constant association not (swi=0, dist < 12*7.5/T)";
        return false;
    }
    return true;
}

// --- criterion 4: the maxcount suite ---------------------------------------

bool run_maxcount(std::string& detail) {
    const SwitchCost K(SwitchKind::maxcount, 1.0, 1);
    const auto seqs = build_maxcount_sequences();
    if (switch_cost(K, seqs.sigma) != 1.0 || switch_cost(K, seqs.sigma_prime) != 1.0 ||
        switch_cost(K, compose(seqs.sigma_prime, seqs.sigma)) != kInfCost) {
        detail = "sequence costs not (1, 1, inf)";
        return false;
    }
    const auto ex = build_maxcount_example();
    const ExtendedMetricParams P(2.0);
    const double ab = d_nat_bruteforce(ex.A, ex.B, K, P).value;
    const double bc = d_nat_bruteforce(ex.B, ex.C, K, P).value;
    const double ac = d_nat_bruteforce(ex.A, ex.C, K, P).value;
    char buf[96];
    std::snprintf(buf, sizeof buf, "D(A,B)=%g D(B,C)=%g D(A,C)=%g", ab, bc, ac);
    detail = buf;
    return ab == 1.0 && bc == 1.0 && ac >= 4.0;
}

// --- criterion 5: exhaustive metric-axiom suite -----------------------------

bool run_axiom_suite(std::string& detail) {
    const ExtendedMetricParams P(1.5);
    const std::vector<double> alphas = {0.5, 1.0, 2.0};
    const std::vector<SwitchKind> kinds = {SwitchKind::count, SwitchKind::trans, SwitchKind::adjtrans};
    const double tol = 0.01;
    long checked = 0;

    for (int T = 1; T <= 3; ++T) {
        // every single-trajectory set on the grid {-2..2}^T (pairs pad to m = 2)
        std::vector<TrajectorySet> sets;
        std::vector<std::vector<double>> seqs{{}};
        for (int t = 0; t < T; ++t) {
            std::vector<std::vector<double>> next;
            for (const auto& s : seqs)
                for (int g = -2; g <= 2; ++g) {
                    auto c = s;
                    c.push_back(static_cast<double>(g));
                    next.push_back(c);
                }
            seqs = next;
        }
        for (const auto& s : seqs) sets.push_back(set_of({traj1d(s)}));
        const std::size_t n = sets.size();

        std::vector<DistanceMatrixSequence> dm(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dm[i * n + j] = distance_matrices(extend_pair(sets[i], sets[j]), P);

        auto check_exact = [&](const std::vector<double>& d, const char* name) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if ((d[i * n + j] == 0.0) != (i == j) ||
                        std::abs(d[i * n + j] - d[j * n + i]) > 1e-12) {
                        detail = std::string(name) + ": identity/symmetry violation (T=" + std::to_string(T) + ")";
                        return false;
                    }
                    for (std::size_t k = 0; k < n; ++k)
                        if (d[i * n + j] > d[i * n + k] + d[k * n + j] + 1e-12) {
                            detail = std::string(name) + ": triangle violation (T=" + std::to_string(T) + ")";
                            return false;
                        }
                }
            return true;
        };

        auto ospa_of = [](const DistanceMatrixSequence& s) {
            Matrix total = s.matrices[0];
            for (std::size_t t = 1; t < s.matrices.size(); ++t) total += s.matrices[t];
            return solve_assignment(total).cost;
        };
        std::vector<double> d(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i * n + j] = ospa_of(dm[i * n + j]);
        if (!check_exact(d, "ospa")) return false;
        checked += static_cast<long>(n * n);

        for (SwitchKind kind : kinds)
            for (double alpha : alphas) {
                const SwitchCost K(kind, alpha);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        d[i * n + j] = d_nat_bruteforce(dm[i * n + j], K).value;
                if (!check_exact(d, "d_nat")) return false;
                checked += static_cast<long>(n * n);
            }

        for (double alpha : alphas) {
            CompParams cp;
            cp.alpha = alpha;
            cp.tol = tol;
            cp.max_iter = 3000;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) d[i * n + j] = d_comp(dm[i * n + j], cp).value;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const double dij = d[i * n + j], dji = d[j * n + i];
                    if (i == j && dij > 2.0 * tol) {
                        detail = "d_comp: identity not ~0";
                        return false;
                    }
                    if (i != j && dij < 0.5) {
                        detail = "d_comp: distinct sets not separated";
                        return false;
                    }
                    if (std::abs(dij - dji) > 2.0 * tol * (dij + dji)) {
                        detail = "d_comp: symmetry beyond tolerance";
                        return false;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        const double dik = d[i * n + k], dkj = d[k * n + j];
                        if (dij > dik + dkj + 2.0 * tol * (dij + dik + dkj)) {
                            detail = "d_comp: triangle beyond tolerance";
                            return false;
                        }
                    }
                }
            checked += static_cast<long>(n * n);
        }
    }
    detail = std::to_string(checked) + " pairwise tables verified";
    return true;
}

// --- criterion 6: relaxation vs reference LP --------------------------------

double best_permutation_value(const DistanceMatrixSequence& dmats, double alpha, MatrixNorm norm) {
    const std::size_t m = dmats.m(), T = dmats.matrices.size();
    const std::vector<Permutation> all = all_permutations(m);
    auto as_matrix = [&](const Permutation& s) {
        Matrix W = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) W(static_cast<Eigen::Index>(i), s[i] - 1) = 1.0;
        return W;
    };
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> choice(T, 0);
    while (true) {
        double v = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            const Matrix W = as_matrix(all[choice[t]]);
            v += (W.transpose() * dmats.matrices[t]).trace();
            if (t + 1 < T) v += alpha * matrix_norm(as_matrix(all[choice[t + 1]]) - W, norm);
        }
        best = std::min(best, v);
        std::size_t t = 0;
        while (t < T && ++choice[t] == all.size()) choice[t++] = 0;
        if (t == T) break;
    }
    return best;
}

bool run_lp_equivalence(std::string& detail) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 2 + rng() % 2, T = 1 + rng() % 3;
        DistanceMatrixSequence dmats;
        for (std::size_t t = 0; t < T; ++t) {
            Matrix D(m, m);
            for (Eigen::Index i = 0; i < D.size(); ++i) D(i) = u(rng);
            dmats.matrices.push_back(D);
        }
        const double alpha = 0.2 + 1.5 * std::generate_canonical<double, 53>(rng);
        CompParams cp;
        cp.alpha = alpha;
        cp.tol = 0.001;
        cp.max_iter = 6000;
        const double v = d_comp(dmats, cp).value;
        const auto lp = simplex_solve(lp_build(dmats, alpha, MatrixNorm::colsum));
        if (lp.status != LpStatus::optimal) {
            detail = "reference LP did not solve";
            return false;
        }
        const double rel = std::abs(v - lp.objective) / std::max(1e-9, std::abs(lp.objective));
        worst = std::max(worst, rel);
        if (rel > 0.01) {
            detail = "d_comp off the reference LP by " + std::to_string(rel);
            return false;
        }
        if (v > best_permutation_value(dmats, alpha, MatrixNorm::colsum) + 1e-6 + 0.01 * v) {
            detail = "d_comp above the permutation-sequence minimum";
            return false;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst relative gap %.2e", worst);
    detail = buf;
    return true;
}

// --- criterion 7: norm checks -----------------------------------------------

bool run_norm_checks(std::string& detail) {
    std::mt19937_64 rng(7777);
    int entrywise_hits = 0;
    for (int k = 0; k < 10000; ++k) {
        const std::size_t m = 2 + rng() % 4;
        const Matrix x1 = random_doubly_stochastic(m, rng());
        const Matrix x2 = random_doubly_stochastic(m, rng());
        const Matrix y1 = random_doubly_stochastic(m, rng());
        const Matrix y2 = random_doubly_stochastic(m, rng());
        if (matrix_norm(y2 * x2 - y1 * x1, MatrixNorm::colsum) >
            matrix_norm(y2 - y1, MatrixNorm::colsum) + matrix_norm(x2 - x1, MatrixNorm::colsum) + 1e-12) {
            detail = "product perturbation inequality violated";
            return false;
        }
        if (matrix_norm(x1, MatrixNorm::colsum) > 1.0 + 1e-12) {
            detail = "colsum ||W|| > 1 on a doubly stochastic matrix";
            return false;
        }
        if (matrix_norm(x1, MatrixNorm::entrywise) > 1.0 + 1e-12) ++entrywise_hits;
    }
    if (entrywise_hits == 0) {
        detail = "expected-fail marker missing: entrywise ||W|| <= 1 never violated";
        return false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "0 violations; entrywise bound failed %d/10000 times as expected",
                  entrywise_hits);
    detail = buf;
    return true;
}

// --- criterion 8: trade-off optimality ---------------------------------------

bool run_tradeoff_optimality(std::string& detail) {
    std::mt19937_64 rng(808);
    const ExtendedMetricParams P(10.0);
    const double tol = 0.005;
    int inside_tested = 0;
    for (int rep = 0; rep < 20; ++rep) {
        GenConfig cfg;
        cfg.n_traj = 3;
        cfg.t_horizon = 10;
        cfg.state_dim = 2;
        cfg.amp_noise = 1.0;
        cfg.del_prob = 0.1;
        cfg.swi_dist = 4.0;
        cfg.seed = 9000 + static_cast<std::uint64_t>(rep);
        const auto [A, B] = generate_pair(cfg);
        if (B.trajectories.empty()) continue;
        const auto dmats = distance_matrices(extend_pair(A, B), P);
        CompParams cp;
        cp.tol = tol;
        cp.max_iter = 4000;
        const auto grid = default_alpha_grid(dmats, 12);
        const auto curve = tradeoff_curve(dmats, cp, grid);
        for (const auto& pt : curve.points)
            if (!pt.ok) {
                detail = "a sweep point failed to converge";
                return false;
            }

        // hull convex and non-increasing
        for (std::size_t i = 0; i + 1 < curve.hull.size(); ++i) {
            if (!(curve.hull[i + 1].first > curve.hull[i].first) ||
                !(curve.hull[i + 1].second < curve.hull[i].second)) {
                detail = "hull not strictly decreasing";
                return false;
            }
            if (i + 2 < curve.hull.size()) {
                const double s1 = (curve.hull[i + 1].second - curve.hull[i].second) /
                                  (curve.hull[i + 1].first - curve.hull[i].first);
                const double s2 = (curve.hull[i + 2].second - curve.hull[i + 1].second) /
                                  (curve.hull[i + 2].first - curve.hull[i + 1].first);
                if (s2 < s1 - 1e-9) {
                    detail = "hull not convex";
                    return false;
                }
            }
        }

        auto hull_height = [&](double x) {
            const auto& h = curve.hull;
            if (x <= h.front().first) return h.front().second;
            for (std::size_t i = 0; i + 1 < h.size(); ++i)
                if (x <= h[i + 1].first) {
                    const double w = (x - h[i].first) / (h[i + 1].first - h[i].first);
                    return h[i].second + w * (h[i + 1].second - h[i].second);
                }
            return h.back().second;
        };

        // randomly sampled feasible sequences strictly inside the region must
        // be beaten by some grid alpha
        const std::size_t m = dmats.m(), T = dmats.matrices.size();
        for (int s = 0; s < 20; ++s) {
            double dist_r = 0.0, swi_r = 0.0;
            Matrix prev;
            for (std::size_t t = 0; t < T; ++t) {
                const Matrix W = random_doubly_stochastic(m, rng());
                dist_r += (W.transpose() * dmats.matrices[t]).trace();
                if (t > 0) swi_r += matrix_norm(W - prev, MatrixNorm::colsum);
                prev = W;
            }
            const double margin = 3.0 * tol * (dist_r + swi_r);
            if (swi_r <= hull_height(dist_r) + margin) continue;  // not strictly inside
            ++inside_tested;
            bool improved = false;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const auto& pt = curve.points[k];
                if (pt.dist + grid[k] * pt.swi < dist_r + grid[k] * swi_r - 1e-9) improved = true;
            }
            if (!improved) {
                detail = "an interior point is not improved by any grid alpha";
                return false;
            }
        }
    }
    detail = std::to_string(inside_tested) + " interior samples all dominated";
    return inside_tested > 100;
}

// --- criterion 9: AUC dominance and monotone degradation ----------------------

bool run_auc_study(std::string& detail) {
    const ExtendedMetricParams P(10.0);
    GenConfig base;
    base.n_traj = 10;
    base.t_horizon = 50;
    base.state_dim = 2;
    base.seed = 4242;

    struct KnobSpec {
        Knob knob;
        const char* name;
        std::vector<double> levels;
    };
    const std::vector<KnobSpec> knobs = {
        {Knob::amp_noise, "AMPnoise", {0.0, 0.5, 1.0, 2.0, 4.0}},
        {Knob::frag_prob, "FRAGprob", {0.0, 0.05, 0.1, 0.2, 0.4}},
        {Knob::del_prob, "DELprob", {0.0, 0.05, 0.1, 0.2, 0.4}},
        {Knob::swi_dist, "SWIdist", {0.0, 2.0, 4.0, 8.0, 16.0}},
    };

    for (const auto& ks : knobs) {
        const auto cells = knob_sweep(base, ks.knob, ks.levels, 10, P);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].mean_auc_comp > cells[i].mean_auc_motp + 1e-12) {
                detail = std::string(ks.name) + ": comp AUC above motp AUC at level " +
                         std::to_string(ks.levels[i]);
                return false;
            }
            if (i > 0) {
                const double se = cells[i - 1].se_auc_comp + cells[i].se_auc_comp;
                if (cells[i].mean_auc_comp < cells[i - 1].mean_auc_comp - se) {
                    detail = std::string(ks.name) + ": comp AUC trend not monotone within 1 SE";
                    return false;
                }
                const double se_m = cells[i - 1].se_auc_motp + cells[i].se_auc_motp;
                if (cells[i].mean_auc_motp < cells[i - 1].mean_auc_motp - se_m) {
                    detail = std::string(ks.name) + ": motp AUC trend not monotone within 1 SE";
                    return false;
                }
            }
        }
        std::printf("        %-8s comp AUC:", ks.name);
        for (const auto& c : cells) std::printf(" %.3f", c.mean_auc_comp);
        std::printf("   motp AUC:");
        for (const auto& c : cells) std::printf(" %.3f", c.mean_auc_motp);
        std::printf("\n");
        std::fflush(stdout);
    }
    detail = "4 knobs x 5 levels x 10 repeats";
    return true;
}

// --- criterion 10: performance envelope ---------------------------------------

bool run_performance(std::string& detail) {
    // Tracking-style benchmark pairs: 32 + 32 trajectories pad to m = 64, so
    // each instant carries ~4e3 association variables over an 800-frame
    // horizon.
    int passes = 0;
    double worst_rel = 0.0, worst_secs = 0.0;
    for (int seed = 0; seed < 10; ++seed) {
        GenConfig cfg;
        cfg.n_traj = 32;
        cfg.t_horizon = 800;
        cfg.state_dim = 2;
        cfg.seed = static_cast<std::uint64_t>(seed) + 1000;
        cfg.amp_noise = 1.0;
        cfg.swi_dist = 4.0;
        cfg.del_prob = 0.05;
        const ExtendedMetricParams P(10.0);
        const auto [A, B] = generate_pair(cfg);
        const auto dmats = distance_matrices(extend_pair(A, B), P);

        CompParams cp;
        cp.norm = MatrixNorm::entrywise;
        cp.alpha = default_alpha_grid(dmats, 3)[1];  // the balance scale
        cp.tol = 0.005;
        cp.max_iter = 150;
        const auto t0 = std::chrono::steady_clock::now();
        const auto fast = d_comp(dmats, cp);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        CompParams ref = cp;
        ref.tol = 1e-4;
        ref.max_iter = 1200;
        const double truth = d_comp(dmats, ref).value;
        const double rel = std::abs(fast.value - truth) / std::max(1e-9, truth);
        worst_rel = std::max(worst_rel, rel);
        worst_secs = std::max(worst_secs, secs);
        if (rel <= 0.01 && secs <= 120.0) ++passes;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/10 seeds; worst gap %.3f%%, worst time %.1fs", passes,
                  100.0 * worst_rel, worst_secs);
    detail = buf;
    return passes >= 9;
}

}  // namespace

int main() {
    Gate gate;
    gate.criterion(1, "documented example values (ospa/motp)", run_examples);
    gate.criterion(2, "MOTP triangle violation on the crossing construction", run_motp_triangle);
    gate.criterion(3, "anchored association trade-off bounds (swi = 1/99)", run_anchoring_tradeoff);
    gate.criterion(4, "maxcount switch-cost suite", run_maxcount);
    gate.criterion(5, "exhaustive metric-axiom suite (grid sets, m <= 2, T <= 3)", run_axiom_suite);
    gate.criterion(6, "d_comp vs reference LP and permutation oracle", run_lp_equivalence);
    gate.criterion(7, "norm inequalities on 10^4 doubly stochastic quadruples", run_norm_checks);
    gate.criterion(8, "trade-off optimality and hull shape on synthetic pairs", run_tradeoff_optimality);
    gate.criterion(9, "AUC dominance and monotone degradation (scaled study)", run_auc_study);
    gate.criterion(10, "large-instance performance envelope (m=64, T=800)", run_performance);

    if (gate.failed == 0) {
        std::printf("ACCEPTANCE: all criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", gate.failed);
    return 1;
}
