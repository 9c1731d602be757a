#pragma once

#include "trajdist/types.hpp"

namespace trajdist {

/// Extended point metric: d+(*,*) = 0, d+(x,*) = d+(*,x) = M,
/// d+(x,y) = min{2M, d(x,y)} with d Euclidean.
double d_plus(const StatePoint& x, const StatePoint& y, const ExtendedMetricParams& params);

/// Pad A and B to a common cardinality m = k + l and horizon T (the largest
/// time index present in either set, after re-indexing so the earliest
/// observation sits at t = 1). Gaps between observations are preserved.
ExtendedPair extend_pair(const TrajectorySet& A, const TrajectorySet& B);

/// The per-instant matrices (D(t))_ij = d+(A+_i(t), B+_j(t)).
DistanceMatrixSequence distance_matrices(const ExtendedPair& pair, const ExtendedMetricParams& params);

}  // namespace trajdist
