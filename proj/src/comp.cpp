#include "trajdist/comp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace trajdist {

namespace {

// Kuhn augmenting-path matching on the allowed (non-zeroed) entries.
int max_matching(const std::vector<std::vector<char>>& forbidden) {
    const int m = static_cast<int>(forbidden.size());
    std::vector<int> col_owner(static_cast<std::size_t>(m), -1);
    std::vector<char> seen;
    std::function<bool(int)> try_row = [&](int i) {
        for (int j = 0; j < m; ++j) {
            if (forbidden[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ||
                seen[static_cast<std::size_t>(j)])
                continue;
            seen[static_cast<std::size_t>(j)] = 1;
            if (col_owner[static_cast<std::size_t>(j)] < 0 || try_row(col_owner[static_cast<std::size_t>(j)])) {
                col_owner[static_cast<std::size_t>(j)] = i;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int i = 0; i < m; ++i) {
        seen.assign(static_cast<std::size_t>(m), 0);
        if (try_row(i)) ++matched;
    }
    return matched;
}

}  // namespace

std::vector<std::vector<std::vector<char>>> sparsify_pattern(const DistanceMatrixSequence& dmats,
                                                             double threshold) {
    const std::size_t T = dmats.t_len();
    const std::size_t m = dmats.m();
    std::vector<std::vector<std::vector<char>>> pattern(T);
    for (std::size_t t = 0; t < T; ++t) {
        const Matrix& D = dmats.matrices[t];
        auto& pat = pattern[t];
        pat.assign(m, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                pat[i][j] = D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > threshold ? 1 : 0;
        // Feasibility repair: while no perfect matching exists, re-enable the
        // cheapest forbidden entry of every row and column.
        while (max_matching(pat) < static_cast<int>(m)) {
            auto enable_cheapest = [&](bool by_row, std::size_t k) {
                double best = kInfCost;
                std::size_t arg = m;
                for (std::size_t x = 0; x < m; ++x) {
                    const std::size_t i = by_row ? k : x, j = by_row ? x : k;
                    if (!pat[i][j]) continue;
                    const double d = dmats.matrices[t](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    if (d < best) { best = d; arg = x; }
                }
                if (arg < m) {
                    const std::size_t i = by_row ? k : arg, j = by_row ? arg : k;
                    pat[i][j] = 0;
                }
            };
            for (std::size_t k = 0; k < m; ++k) {
                enable_cheapest(true, k);
                enable_cheapest(false, k);
            }
        }
    }
    return pattern;
}

CompResult d_comp(const DistanceMatrixSequence& dmats, const CompParams& cp,
                  const std::vector<Matrix>* warm_start) {
    if (cp.alpha < 0.0 || !(cp.tol > 0.0) || cp.max_iter < 1) throw InvalidInput("d_comp: bad parameters");
    CompResult res;
    if (dmats.t_len() == 0 || dmats.m() == 0) return res;

    AdmmOptions opts;
    opts.alpha = cp.alpha;
    opts.norm = cp.norm;
    opts.tol = cp.tol;
    opts.max_iter = cp.max_iter;
    opts.warm_start = warm_start;
    std::vector<std::vector<std::vector<char>>> pattern;
    if (cp.sparsify_threshold.has_value()) {
        pattern = sparsify_pattern(dmats, *cp.sparsify_threshold);
        opts.zero_pattern = &pattern;
    }
    AdmmResult a = admm_solve(dmats, opts);
    res.value = a.objective;
    res.dist_term = a.dist_term;
    res.swi_term = a.swi_term;
    res.swi_raw = cp.alpha > 0.0 ? a.swi_term / cp.alpha : [&] {
        double s = 0.0;
        for (std::size_t t = 0; t + 1 < a.weights.size(); ++t)
            s += matrix_norm(a.weights[t + 1] - a.weights[t], cp.norm);
        return s;
    }();
    res.weights = std::move(a.weights);
    res.converged = a.converged;
    res.iterations = a.iterations;
    res.trace = std::move(a.trace);
    return res;
}

CompResult d_comp(const TrajectorySet& A, const TrajectorySet& B, const ExtendedMetricParams& params,
                  const CompParams& cp) {
    return d_comp(distance_matrices(extend_pair(A, B), params), cp);
}

std::vector<double> default_alpha_grid(const DistanceMatrixSequence& dmats, std::size_t n) {
    const std::size_t T = dmats.t_len();
    double mean_sum = 0.0;
    for (const auto& D : dmats.matrices) mean_sum += D.size() > 0 ? D.mean() : 0.0;
    const double rho = T > 1 ? mean_sum / (2.0 * static_cast<double>(T - 1)) : mean_sum;
    const double base = rho > 0.0 ? rho : 1.0;
    std::vector<double> grid;
    grid.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.5;
        grid.push_back(base * std::pow(10.0, -3.0 + 6.0 * f));
    }
    return grid;
}

std::vector<std::pair<double, double>> lower_left_hull(const std::vector<std::pair<double, double>>& pts) {
    std::vector<std::pair<double, double>> p = pts;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() <= 1) return p;
    // Monotone-chain lower hull in the (dist, swi) plane.
    std::vector<std::pair<double, double>> hull;
    for (const auto& q : p) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const double cross = (b.first - a.first) * (q.second - a.second) -
                                 (b.second - a.second) * (q.first - a.first);
            if (cross <= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(q);
    }
    // Keep only the non-increasing (lower-left) part: stop once the minimum
    // switch value is reached.
    std::vector<std::pair<double, double>> out;
    for (const auto& q : hull) {
        if (!out.empty() && q.second >= out.back().second - 1e-15) break;
        out.push_back(q);
    }
    if (out.empty()) out.push_back(hull.front());
    return out;
}

TradeoffCurve tradeoff_curve(const DistanceMatrixSequence& dmats, const CompParams& cp,
                             const std::vector<double>& alpha_grid) {
    if (alpha_grid.empty()) throw InvalidInput("tradeoff_curve: empty alpha grid");
    if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end()))
        throw InvalidInput("tradeoff_curve: alpha grid must be ascending");
    TradeoffCurve curve;
    std::vector<Matrix> warm;
    for (double a : alpha_grid) {
        CompParams p = cp;
        p.alpha = a;
        TradeoffPoint pt;
        pt.alpha = a;
        try {
            CompResult r = d_comp(dmats, p, warm.empty() ? nullptr : &warm);
            pt.dist = r.dist_term;
            pt.swi = r.swi_raw;
            // The returned weights are feasible by construction, so the point
            // is a valid upper bound even when the solver hit its iteration
            // cap before the convergence test fired.
            pt.ok = true;
            warm = std::move(r.weights);
        } catch (const std::exception&) {
            pt.ok = false;
        }
        curve.points.push_back(pt);
    }
    std::vector<std::pair<double, double>> ok_pts;
    for (const auto& pt : curve.points)
        if (pt.ok) ok_pts.emplace_back(pt.dist, pt.swi);
    curve.hull = lower_left_hull(ok_pts);
    for (auto& pt : curve.points)
        for (const auto& h : curve.hull)
            if (pt.ok && std::abs(pt.dist - h.first) < 1e-12 && std::abs(pt.swi - h.second) < 1e-12)
                pt.on_hull = true;
    return curve;
}

TradeoffCurve tradeoff_curve(const TrajectorySet& A, const TrajectorySet& B,
                             const ExtendedMetricParams& params, const CompParams& cp,
                             const std::vector<double>& alpha_grid) {
    return tradeoff_curve(distance_matrices(extend_pair(A, B), params), cp, alpha_grid);
}

TradeoffCurve motp_curve(const TrajectorySet& A, const TrajectorySet& B,
                         const ExtendedMetricParams& params, const std::vector<double>& thr_grid) {
    if (thr_grid.empty()) throw InvalidInput("motp_curve: empty thr grid");
    TradeoffCurve curve;
    for (double thr : thr_grid) {
        MetricResult r = motp(A, B, thr, params);
        TradeoffPoint pt;
        pt.alpha = thr;
        pt.dist = r.value;
        pt.swi = r.swi_term;
        curve.points.push_back(pt);
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : curve.points) pts.emplace_back(pt.dist, pt.swi);
    curve.hull = lower_left_hull(pts);
    for (auto& pt : curve.points)
        for (const auto& h : curve.hull)
            if (std::abs(pt.dist - h.first) < 1e-12 && std::abs(pt.swi - h.second) < 1e-12)
                pt.on_hull = true;
    return curve;
}

double auc(const TradeoffCurve& curve, double max_dist, double max_swi) {
    if (!(max_dist > 0.0) || !(max_swi > 0.0)) throw InvalidInput("auc: box bounds must be positive");
    if (curve.hull.empty()) throw InvalidInput("auc: empty curve");
    auto clamp_swi = [&](double s) { return std::min(std::max(s, 0.0), max_swi); };
    double area = 0.0;
    // Left of the first achievable point the error is saturated.
    const double x0 = std::min(std::max(curve.hull.front().first, 0.0), max_dist);
    area += max_swi * x0;
    for (std::size_t k = 0; k + 1 < curve.hull.size(); ++k) {
        double xa = curve.hull[k].first, ya = clamp_swi(curve.hull[k].second);
        double xb = curve.hull[k + 1].first, yb = clamp_swi(curve.hull[k + 1].second);
        if (xa >= max_dist) break;
        if (xb > max_dist) {
            yb = ya + (yb - ya) * (max_dist - xa) / (xb - xa);
            xb = max_dist;
        }
        area += 0.5 * (ya + yb) * (xb - xa);
    }
    const double x_last = std::min(curve.hull.back().first, max_dist);
    if (x_last < max_dist) area += clamp_swi(curve.hull.back().second) * (max_dist - x_last);
    return area / (max_dist * max_swi);
}

}  // namespace trajdist
