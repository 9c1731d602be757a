#pragma once

#include "trajdist/lp.hpp"

namespace trajdist {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double objective = 0.0;
    Vector x;
};

/// Dense two-phase primal simplex with Bland's anti-cycling rule. Intended as
/// an exact reference oracle for small instances, not a production solver.
LpSolution simplex_solve(const LinearProgram& lp);

}  // namespace trajdist
