#pragma once

#include "trajdist/norms.hpp"
#include "trajdist/types.hpp"

#include <string>
#include <vector>

namespace trajdist {

struct AdmmOptions {
    double alpha = 1.0;
    MatrixNorm norm = MatrixNorm::colsum;
    double tol = 0.01;       // relative optimality tolerance driving the stop rule
    int max_iter = 1000;
    double eps_feas = 1e-6;  // feasibility of the returned weights
    double rho = 0.0;        // 0 = auto-scale from the distance data
    double over_relax = 1.3; // block over-relaxation factor, 1 = none
    // Optional per-frame forced-zero pattern (true = W_ij(t) fixed to 0).
    const std::vector<std::vector<std::vector<char>>>* zero_pattern = nullptr;
    // Optional warm start, same shape as the result weights.
    const std::vector<Matrix>* warm_start = nullptr;
};

struct AdmmTracePoint {
    int iter = 0;
    double objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

struct AdmmResult {
    std::vector<Matrix> weights;  // T doubly stochastic matrices (within eps_feas)
    double objective = 0.0;       // alpha-weighted full objective at `weights`
    double dist_term = 0.0;       // sum_t tr(W(t)^T D(t))
    double swi_term = 0.0;        // alpha * sum_t ||W(t+1) - W(t)||
    bool converged = false;
    int iterations = 0;
    std::vector<AdmmTracePoint> trace;
};

/// Consensus ADMM for min alpha*sum ||W(t+1)-W(t)|| + sum tr(W(t)^T D(t)) over
/// sequences of doubly stochastic matrices. The returned weights are the
/// final iterate projected exactly onto the feasible set (to eps_feas).
AdmmResult admm_solve(const DistanceMatrixSequence& dmats, const AdmmOptions& opts);

/// Serializes the iteration trace as CSV: iter,objective,primal_residual,dual_residual.
std::string trace_csv(const std::vector<AdmmTracePoint>& trace);

}  // namespace trajdist
