#pragma once

#include "trajdist/norms.hpp"
#include "trajdist/types.hpp"

namespace trajdist {

/// minimize c^T x  subject to  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0.
struct LinearProgram {
    Vector c;
    Matrix a_eq;
    Vector b_eq;
    Matrix a_ub;
    Vector b_ub;

    Eigen::Index n_vars() const { return c.size(); }
};

struct CompLpLayout {
    std::size_t m = 0, t_len = 0;
    std::size_t n_w = 0;  // W(t)_ij, t-major then column-major within a frame
    std::size_t n_h = 0;  // h(t)_ij for t = 1..T-1
    std::size_t n_e = 0;  // e_t, colsum norm only

    std::size_t w_index(std::size_t t, std::size_t i, std::size_t j) const {
        return (t * m + j) * m + i;
    }
    std::size_t h_index(std::size_t t, std::size_t i, std::size_t j) const {
        return n_w + (t * m + j) * m + i;
    }
    std::size_t e_index(std::size_t t) const { return n_w + n_h + t; }
};

/// The exact linear program whose optimum equals the trace-metric objective:
/// the norm of each temporal difference is replaced by auxiliary variables
/// (h for entrywise absolute values, plus per-edge bounds e for the
/// max-column-sum norm).
LinearProgram lp_build(const DistanceMatrixSequence& dmats, double alpha, MatrixNorm norm,
                       CompLpLayout* layout = nullptr);

}  // namespace trajdist
