#include "trajdist/exact.hpp"

#include "trajdist/assignment.hpp"

#include <algorithm>
#include <cmath>

namespace trajdist {

MetricResult ospa(const TrajectorySet& A, const TrajectorySet& B, const ExtendedMetricParams& params) {
    const ExtendedPair pair = extend_pair(A, B);
    const DistanceMatrixSequence dmats = distance_matrices(pair, params);
    const auto m = static_cast<Eigen::Index>(pair.m);

    MetricResult res;
    if (m == 0 || pair.t_horizon == 0) return res;

    Matrix total = Matrix::Zero(m, m);
    for (const auto& D : dmats.matrices) total += D;
    const AssignmentResult assign = solve_assignment(total);

    std::vector<int> sigma(pair.m);
    for (std::size_t i = 0; i < pair.m; ++i) sigma[i] = assign.row_to_col[i] + 1;
    const Permutation perm(sigma);
    res.association.sigma.seq.assign(static_cast<std::size_t>(pair.t_horizon), perm);
    res.value = assign.cost;
    res.dist_term = assign.cost;
    res.swi_term = 0.0;
    return res;
}

Association clear_mot_association(const DistanceMatrixSequence& dmats, double thr) {
    Association assoc;
    const int T = static_cast<int>(dmats.t_len());
    if (T == 0) return assoc;
    const int m = static_cast<int>(dmats.m());

    assoc.sigma.seq.reserve(static_cast<std::size_t>(T));
    assoc.anchored.assign(static_cast<std::size_t>(T), std::vector<char>(static_cast<std::size_t>(m), 0));

    // t = 1: plain minimum-cost assignment.
    {
        const AssignmentResult init = solve_assignment(dmats.matrices[0]);
        std::vector<int> sigma(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) sigma[static_cast<std::size_t>(i)] = init.row_to_col[static_cast<std::size_t>(i)] + 1;
        assoc.sigma.seq.emplace_back(sigma);
    }

    for (int t = 2; t <= T; ++t) {
        const Matrix& D = dmats.matrices[static_cast<std::size_t>(t - 1)];
        const Permutation& prev = assoc.sigma.seq[static_cast<std::size_t>(t - 2)];
        std::vector<int> sigma(static_cast<std::size_t>(m), 0);
        std::vector<char> col_taken(static_cast<std::size_t>(m), 0);
        std::vector<int> free_rows;
        for (int i = 0; i < m; ++i) {
            const int j = prev[static_cast<std::size_t>(i)];
            if (D(i, j - 1) < thr) {
                sigma[static_cast<std::size_t>(i)] = j;
                col_taken[static_cast<std::size_t>(j - 1)] = 1;
                assoc.anchored[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(i)] = 1;
            } else {
                free_rows.push_back(i);
            }
        }
        if (!free_rows.empty()) {
            std::vector<int> free_cols;
            for (int j = 0; j < m; ++j)
                if (!col_taken[static_cast<std::size_t>(j)]) free_cols.push_back(j);
            Matrix sub(static_cast<Eigen::Index>(free_rows.size()), static_cast<Eigen::Index>(free_cols.size()));
            for (std::size_t a = 0; a < free_rows.size(); ++a)
                for (std::size_t b = 0; b < free_cols.size(); ++b)
                    sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                        D(free_rows[a], free_cols[b]);
            const AssignmentResult completion = solve_assignment(sub);
            for (std::size_t a = 0; a < free_rows.size(); ++a)
                sigma[static_cast<std::size_t>(free_rows[a])] =
                    free_cols[static_cast<std::size_t>(completion.row_to_col[a])] + 1;
        }
        assoc.sigma.seq.emplace_back(sigma);
    }
    return assoc;
}

Association clear_mot_association(const ExtendedPair& pair, double thr, const ExtendedMetricParams& params) {
    return clear_mot_association(distance_matrices(pair, params), thr);
}

MetricResult motp(const TrajectorySet& A, const TrajectorySet& B, double thr, const ExtendedMetricParams& params) {
    if (!(thr > 0.0)) throw InvalidInput("motp: thr must be > 0");
    const ExtendedPair pair = extend_pair(A, B);
    const DistanceMatrixSequence dmats = distance_matrices(pair, params);

    MetricResult res;
    res.association = clear_mot_association(dmats, thr);
    for (std::size_t t = 0; t < dmats.t_len(); ++t) {
        const Permutation& s = res.association.sigma.seq[t];
        for (std::size_t i = 0; i < pair.m; ++i)
            res.value += dmats.matrices[t](static_cast<Eigen::Index>(i), s[i] - 1);
    }
    res.dist_term = res.value;
    // swi_term carries the raw association-change count of the heuristic.
    for (std::size_t t = 0; t + 1 < res.association.sigma.t_len(); ++t)
        if (res.association.sigma.seq[t + 1] != res.association.sigma.seq[t]) res.swi_term += 1.0;
    return res;
}

SwiDist swi_dist(const PermutationSequence& S, const DistanceMatrixSequence& dmats) {
    SwiDist out;
    const std::size_t T = dmats.t_len();
    if (T == 0) return out;
    if (S.t_len() != T || S.m() != dmats.m()) throw InvalidInput("swi_dist: shape mismatch");

    int changes = 0;
    for (std::size_t t = 0; t + 1 < T; ++t)
        if (S.seq[t + 1] != S.seq[t]) ++changes;
    out.swi = T > 1 ? static_cast<double>(changes) / static_cast<double>(T - 1) : 0.0;

    double total = 0.0;
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t i = 0; i < dmats.m(); ++i)
            total += dmats.matrices[t](static_cast<Eigen::Index>(i), S.seq[t][i] - 1);
    out.dist = total / static_cast<double>(T);
    return out;
}

SwiDist swi_dist(const PermutationSequence& S, const ExtendedPair& pair, const ExtendedMetricParams& params) {
    return swi_dist(S, distance_matrices(pair, params));
}

namespace {

std::uint64_t factorial_capped(std::size_t m, std::uint64_t cap) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= m; ++i) {
        if (f > cap / i) return cap + 1;
        f *= i;
    }
    return f;
}

struct BruteForceState {
    const std::vector<Matrix>* dmats = nullptr;
    const std::vector<Permutation>* perms = nullptr;
    std::vector<std::vector<double>> frame_cost;  // [t][perm] matched distance
    std::vector<double> suffix_lb;                // best possible distance from frame t on
    SwitchCost K;
    double best = kInfCost;
    std::vector<std::size_t> best_choice, choice;
    std::uint64_t evaluations = 0, cap = 0;

    void dfs(std::size_t t, std::size_t prev, double acc, int changes) {
        const std::size_t T = frame_cost.size();
        if (t == T) {
            if (acc < best) {
                best = acc;
                best_choice = choice;
            }
            return;
        }
        if ((evaluations += perms->size()) > cap)
            throw InstanceTooLarge("d_nat_bruteforce: enumeration cap exceeded; use D_comp instead");
        for (std::size_t p = 0; p < perms->size(); ++p) {
            double step = frame_cost[t][p];
            int ch = changes;
            if (t > 0) {
                if (K.kind == SwitchKind::maxcount) {
                    if (p != prev) {
                        if (++ch > K.beta) continue;
                        step += K.alpha;
                    }
                } else if (K.kind == SwitchKind::ospa) {
                    if (p != prev) continue;
                } else {
                    step += switch_step_cost(K, (*perms)[prev], (*perms)[p]);
                }
            }
            const double next = acc + step;
            if (next + suffix_lb[t + 1] >= best) continue;
            choice[t] = p;
            dfs(t + 1, p, next, ch);
        }
    }
};

}  // namespace

MetricResult d_nat_bruteforce(const DistanceMatrixSequence& dmats, const SwitchCost& K,
                              std::uint64_t enumeration_cap) {
    MetricResult res;
    const std::size_t T = dmats.t_len();
    const std::size_t m = dmats.m();
    if (T == 0 || m == 0) return res;

    // The cap bounds the number of objective evaluations the search may
    // perform, including the per-frame precomputation below; branch-and-bound
    // pruning usually keeps the real count far below (m!)^T.
    const std::uint64_t f = factorial_capped(m, enumeration_cap);
    if (f > enumeration_cap || static_cast<std::uint64_t>(T) * f > enumeration_cap)
        throw InstanceTooLarge("d_nat_bruteforce: enumeration cap exceeded; use D_comp instead");

    BruteForceState st;
    st.K = K;
    st.cap = enumeration_cap;
    st.evaluations = static_cast<std::uint64_t>(T) * f;
    const auto perms = all_permutations(m);
    st.perms = &perms;
    st.frame_cost.assign(T, std::vector<double>(perms.size(), 0.0));
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t p = 0; p < perms.size(); ++p) {
            double c = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                c += dmats.matrices[t](static_cast<Eigen::Index>(i), perms[p][i] - 1);
            st.frame_cost[t][p] = c;
        }
    st.suffix_lb.assign(T + 1, 0.0);
    for (std::size_t t = T; t-- > 0;)
        st.suffix_lb[t] = st.suffix_lb[t + 1] + *std::min_element(st.frame_cost[t].begin(), st.frame_cost[t].end());

    // Seed the incumbent with the best constant sequence; for K_ospa this is
    // already the full search space.
    st.choice.assign(T, 0);
    for (std::size_t p = 0; p < perms.size(); ++p) {
        double c = 0.0;
        for (std::size_t t = 0; t < T; ++t) c += st.frame_cost[t][p];
        if (c < st.best) {
            st.best = c;
            st.best_choice.assign(T, p);
        }
    }
    if (K.kind != SwitchKind::ospa) st.dfs(0, 0, 0.0, 0);

    res.value = st.best;
    res.association.sigma.seq.reserve(T);
    double dist = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        res.association.sigma.seq.push_back(perms[st.best_choice[t]]);
        dist += st.frame_cost[t][st.best_choice[t]];
    }
    res.dist_term = dist;
    res.swi_term = res.value - dist;
    return res;
}

MetricResult d_nat_bruteforce(const TrajectorySet& A, const TrajectorySet& B, const SwitchCost& K,
                              const ExtendedMetricParams& params, std::uint64_t enumeration_cap) {
    return d_nat_bruteforce(distance_matrices(extend_pair(A, B), params), K, enumeration_cap);
}

// --- counterexample constructions ---

namespace {

// Piecewise linear value of the base crossing trajectory that starts at +2,
// moves to -0.5 between t0 and t1, and stays there.
double crossing_value(int t, int t0, int t1) {
    if (t <= t0) return 2.0;
    if (t >= t1) return -0.5;
    const double frac = static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
    return 2.0 + frac * (-2.5);
}

Trajectory make_traj_1d(int T, double scale, double offset, const std::vector<double>& vals) {
    Trajectory tr;
    const bool two_d = offset != 0.0;
    for (int t = 1; t <= T; ++t) {
        if (two_d) {
            Vector x(2);
            x << scale * vals[static_cast<std::size_t>(t - 1)], offset;
            tr.set(t, x);
        } else {
            Vector x(1);
            x << scale * vals[static_cast<std::size_t>(t - 1)];
            tr.set(t, x);
        }
    }
    return tr;
}

}  // namespace

CrossingExample build_crossing_example(double thr, int T, std::size_t m) {
    if (!(thr > 0.0)) throw InvalidInput("build_crossing_example: thr must be > 0");
    if (T < 14) throw InvalidInput("build_crossing_example: need T >= 14");
    if (m < 2) throw InvalidInput("build_crossing_example: need m >= 2");

    CrossingExample ex;
    ex.scale = thr / 1.5;

    // A crosses between t = 7 and t = 9, B already between t = 5 and t = 7.
    std::vector<double> a1(static_cast<std::size_t>(T)), b1(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
        a1[static_cast<std::size_t>(t - 1)] = crossing_value(t, 7, 9);
        b1[static_cast<std::size_t>(t - 1)] = crossing_value(t, 5, 7);
    }
    std::vector<double> a2(a1), b2(b1);
    for (auto& v : a2) v = -v;
    for (auto& v : b2) v = -v;

    const std::size_t blocks = m / 2;
    const bool use_2d = m > 2;
    const double block_gap = 1000.0 * ex.scale;
    for (std::size_t c = 0; c < blocks; ++c) {
        const double off = use_2d ? block_gap * static_cast<double>(c + 1) : 0.0;
        ex.A.trajectories.push_back(make_traj_1d(T, ex.scale, off, a1));
        ex.A.trajectories.push_back(make_traj_1d(T, ex.scale, off, a2));
        ex.B.trajectories.push_back(make_traj_1d(T, ex.scale, off, b1));
        ex.B.trajectories.push_back(make_traj_1d(T, ex.scale, off, b2));
        ex.C.trajectories.push_back(make_traj_1d(T, ex.scale, off, a1));  // C_1 == A_1
        ex.C.trajectories.push_back(make_traj_1d(T, ex.scale, off, b2));  // C_2 == B_2
    }
    if (m % 2 == 1) {
        // One extra trajectory, identical in all three sets and far away.
        std::vector<double> flat(static_cast<std::size_t>(T), 0.0);
        const double off = use_2d || m == 3 ? block_gap * static_cast<double>(blocks + 1) : 0.0;
        const Trajectory extra = make_traj_1d(T, ex.scale, off, flat);
        ex.A.trajectories.push_back(extra);
        ex.B.trajectories.push_back(extra);
        ex.C.trajectories.push_back(extra);
    }
    return ex;
}

MaxcountExample build_maxcount_example() {
    MaxcountExample ex;
    auto traj = [](double v1, double v2, double v3) {
        Trajectory tr;
        Vector x(1);
        x << v1; tr.set(1, x);
        x << v2; tr.set(2, x);
        x << v3; tr.set(3, x);
        return tr;
    };
    ex.A.trajectories = {traj(2, -2, -2), traj(-2, 2, 2)};
    ex.B.trajectories = {traj(2, 2, 2), traj(-2, -2, -2)};
    ex.C.trajectories = {traj(2, 2, -2), traj(-2, -2, 2)};
    return ex;
}

MaxcountSequences build_maxcount_sequences() {
    MaxcountSequences out;
    const Permutation id = Permutation::identity(2);
    const Permutation swap(std::vector<int>{2, 1});
    out.sigma.seq = {id, swap, swap};
    out.sigma_prime.seq = {id, id, swap};
    return out;
}

}  // namespace trajdist
