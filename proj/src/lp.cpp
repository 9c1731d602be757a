#include "trajdist/lp.hpp"

namespace trajdist {

LinearProgram lp_build(const DistanceMatrixSequence& dmats, double alpha, MatrixNorm norm,
                       CompLpLayout* layout_out) {
    if (alpha < 0.0) throw InvalidInput("lp_build: alpha must be >= 0");
    const std::size_t T = dmats.t_len();
    const std::size_t m = dmats.m();
    if (T == 0 || m == 0) throw InvalidInput("lp_build: empty distance sequence");

    CompLpLayout lay;
    lay.m = m;
    lay.t_len = T;
    lay.n_w = T * m * m;
    lay.n_h = (T - 1) * m * m;
    lay.n_e = norm == MatrixNorm::colsum ? T - 1 : 0;
    const std::size_t n = lay.n_w + lay.n_h + lay.n_e;

    LinearProgram lp;
    lp.c = Vector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < m; ++i)
                lp.c[static_cast<Eigen::Index>(lay.w_index(t, i, j))] =
                    dmats.matrices[t](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (norm == MatrixNorm::colsum) {
        for (std::size_t t = 0; t + 1 < T; ++t)
            lp.c[static_cast<Eigen::Index>(lay.e_index(t))] = alpha;
    } else {
        for (std::size_t t = 0; t + 1 < T; ++t)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < m; ++i)
                    lp.c[static_cast<Eigen::Index>(lay.h_index(t, i, j))] = alpha;
    }

    // Equalities: row sums and column sums of every W(t).
    const std::size_t n_eq = T * 2 * m;
    lp.a_eq = Matrix::Zero(static_cast<Eigen::Index>(n_eq), static_cast<Eigen::Index>(n));
    lp.b_eq = Vector::Ones(static_cast<Eigen::Index>(n_eq));
    std::size_t row = 0;
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t i = 0; i < m; ++i, ++row)
            for (std::size_t j = 0; j < m; ++j)
                lp.a_eq(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(lay.w_index(t, i, j))) = 1.0;
        for (std::size_t j = 0; j < m; ++j, ++row)
            for (std::size_t i = 0; i < m; ++i)
                lp.a_eq(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(lay.w_index(t, i, j))) = 1.0;
    }

    // Inequalities: the absolute-value pairs +-(W(t+1)-W(t)) <= h(t), and for
    // the column-sum norm additionally sum_i h(t)_ij <= e_t for every column.
    const std::size_t n_ub = (T - 1) * 2 * m * m + (norm == MatrixNorm::colsum ? (T - 1) * m : 0);
    lp.a_ub = Matrix::Zero(static_cast<Eigen::Index>(n_ub), static_cast<Eigen::Index>(n));
    lp.b_ub = Vector::Zero(static_cast<Eigen::Index>(n_ub));
    row = 0;
    for (std::size_t t = 0; t + 1 < T; ++t)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < m; ++i) {
                const auto wi0 = static_cast<Eigen::Index>(lay.w_index(t, i, j));
                const auto wi1 = static_cast<Eigen::Index>(lay.w_index(t + 1, i, j));
                const auto hi = static_cast<Eigen::Index>(lay.h_index(t, i, j));
                lp.a_ub(static_cast<Eigen::Index>(row), wi1) = 1.0;
                lp.a_ub(static_cast<Eigen::Index>(row), wi0) = -1.0;
                lp.a_ub(static_cast<Eigen::Index>(row), hi) = -1.0;
                ++row;
                lp.a_ub(static_cast<Eigen::Index>(row), wi1) = -1.0;
                lp.a_ub(static_cast<Eigen::Index>(row), wi0) = 1.0;
                lp.a_ub(static_cast<Eigen::Index>(row), hi) = -1.0;
                ++row;
            }
    if (norm == MatrixNorm::colsum)
        for (std::size_t t = 0; t + 1 < T; ++t)
            for (std::size_t j = 0; j < m; ++j, ++row) {
                for (std::size_t i = 0; i < m; ++i)
                    lp.a_ub(static_cast<Eigen::Index>(row),
                            static_cast<Eigen::Index>(lay.h_index(t, i, j))) = 1.0;
                lp.a_ub(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(lay.e_index(t))) = -1.0;
            }

    if (layout_out != nullptr) *layout_out = lay;
    return lp;
}

}  // namespace trajdist
