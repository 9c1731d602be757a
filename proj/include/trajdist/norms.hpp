#pragma once

#include "trajdist/types.hpp"

#include <cstdint>

namespace trajdist {

enum class MatrixNorm {
    colsum,     // max absolute column sum (operator 1-norm)
    entrywise,  // sum of absolute entries
};

double matrix_norm(const Matrix& X, MatrixNorm norm);

/// prox_{c·||.||}(X) = argmin_V c·||V|| + (1/2)||V - X||_F^2, c >= 0.
Matrix norm_prox(const Matrix& X, MatrixNorm norm, double c);

/// Euclidean projection onto the affine set {Y : Y1 = 1, Y^T 1 = 1}
/// (row and column sums one, sign-unconstrained). Closed form.
Matrix project_affine_doubly_stochastic(const Matrix& X);

/// Euclidean projection onto the Birkhoff polytope (row/column sums one,
/// entries >= 0) by Dykstra's alternating projections, to tolerance eps.
/// An optional zero pattern (true = entry forced to 0) restricts the support;
/// the pattern must admit a doubly stochastic matrix.
Matrix project_doubly_stochastic(const Matrix& X, double eps = 1e-9, int max_sweeps = 10000,
                                 const std::vector<std::vector<char>>* zero_pattern = nullptr);

/// Largest violation of the doubly stochastic constraints: max over
/// |row sum - 1|, |column sum - 1| and -min(entry, 0).
double doubly_stochastic_residual(const Matrix& X);

/// Random doubly stochastic matrix: convex combination of `n_perms` random
/// permutation matrices (Birkhoff-von Neumann representation).
Matrix random_doubly_stochastic(std::size_t m, std::uint64_t seed, int n_perms = 8);

}  // namespace trajdist
