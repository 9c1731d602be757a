#pragma once

#include "trajdist/types.hpp"

#include <vector>

namespace trajdist {

struct AssignmentResult {
    std::vector<int> row_to_col;  // zero-based; row i assigned to column row_to_col[i]
    double cost = 0.0;
};

/// Exact minimum-cost square assignment, O(m^3) shortest augmenting paths.
/// Among all optimal assignments the lexicographically smallest one
/// (row 0's column minimized first, then row 1's, ...) is returned, so the
/// result is deterministic and tie-stable.
AssignmentResult solve_assignment(const Matrix& cost);

}  // namespace trajdist
