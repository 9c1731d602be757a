#pragma once

#include "trajdist/admm.hpp"
#include "trajdist/exact.hpp"
#include "trajdist/norms.hpp"
#include "trajdist/types.hpp"

#include <optional>
#include <vector>

namespace trajdist {

struct CompParams {
    double alpha = 1.0;
    MatrixNorm norm = MatrixNorm::colsum;
    double tol = 0.01;
    int max_iter = 1000;
    std::optional<double> sparsify_threshold;

    CompParams() = default;
};

struct CompResult {
    double value = 0.0;
    double dist_term = 0.0;  // sum_t tr(W(t)^T D(t))
    double swi_term = 0.0;   // alpha-weighted switch cost
    double swi_raw = 0.0;    // sum_t ||W(t+1) - W(t)||, unweighted
    std::vector<Matrix> weights;
    bool converged = true;
    int iterations = 0;
    std::vector<AdmmTracePoint> trace;
};

/// The convex trace metric: minimum over doubly stochastic sequences of
/// alpha * sum_t ||W(t+1)-W(t)|| + sum_t tr(W(t)^T D(t)).
CompResult d_comp(const TrajectorySet& A, const TrajectorySet& B, const ExtendedMetricParams& params,
                  const CompParams& cp);
CompResult d_comp(const DistanceMatrixSequence& dmats, const CompParams& cp,
                  const std::vector<Matrix>* warm_start = nullptr);

/// Forced-zero patterns for W(t) where D(t)_ij > threshold, repaired so every
/// frame still admits a doubly stochastic matrix (cheapest entries re-enabled).
std::vector<std::vector<std::vector<char>>> sparsify_pattern(const DistanceMatrixSequence& dmats,
                                                             double threshold);

struct TradeoffPoint {
    double alpha = 0.0;  // switch weight (or thr for the MOTP-derived curve)
    double dist = 0.0;
    double swi = 0.0;    // unweighted switch total
    bool ok = true;      // a feasible value was produced for this point
    bool on_hull = false;
};

struct TradeoffCurve {
    std::vector<TradeoffPoint> points;
    std::vector<std::pair<double, double>> hull;  // lower-left hull, (dist, swi)
};

/// D_comp trade-off sweep over ascending alpha values (warm-started).
TradeoffCurve tradeoff_curve(const TrajectorySet& A, const TrajectorySet& B,
                             const ExtendedMetricParams& params, const CompParams& cp,
                             const std::vector<double>& alpha_grid);
TradeoffCurve tradeoff_curve(const DistanceMatrixSequence& dmats, const CompParams& cp,
                             const std::vector<double>& alpha_grid);

/// 20 logarithmically spaced alphas spanning [1e-3, 1e3] times the balance
/// scale rho = (sum_t mean D(t)) / (2(T-1)).
std::vector<double> default_alpha_grid(const DistanceMatrixSequence& dmats, std::size_t n = 20);

/// MOTP curve parameterized by the anchoring threshold: dist is the MOTP
/// value, swi the raw association change count.
TradeoffCurve motp_curve(const TrajectorySet& A, const TrajectorySet& B,
                         const ExtendedMetricParams& params, const std::vector<double>& thr_grid);

/// Lower-left convex hull of (dist, swi) points: convex and non-increasing,
/// ending at the minimum switch value.
std::vector<std::pair<double, double>> lower_left_hull(const std::vector<std::pair<double, double>>& pts);

/// Normalized area under the hull over [0,max_dist] x [0,max_swi]; the hull
/// extends left of its first point at max_swi and right of its last point at
/// that point's swi.
double auc(const TradeoffCurve& curve, double max_dist, double max_swi);

}  // namespace trajdist
