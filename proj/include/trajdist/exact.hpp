#pragma once

#include "trajdist/extend.hpp"
#include "trajdist/permutation.hpp"
#include "trajdist/types.hpp"

#include <cstdint>

namespace trajdist {

/// A frame-by-frame matching between A+ and B+, with the MOTP anchoring flags.
struct Association {
    PermutationSequence sigma;                 // length T, size m
    std::vector<std::vector<char>> anchored;   // anchored[t-1][i], MOTP only
};

struct MetricResult {
    double value = 0.0;
    double dist_term = 0.0;
    double swi_term = 0.0;
    Association association;
    bool converged = true;
};

/// OSPA: the best single full-trajectory matching (Hungarian on the summed
/// per-pair costs).
MetricResult ospa(const TrajectorySet& A, const TrajectorySet& B, const ExtendedMetricParams& params);

/// The CLEAR MOT sequential association with anchoring threshold thr.
Association clear_mot_association(const ExtendedPair& pair, double thr, const ExtendedMetricParams& params);
Association clear_mot_association(const DistanceMatrixSequence& dmats, double thr);

/// MOTP: sum of d+ along the CLEAR MOT association.
MetricResult motp(const TrajectorySet& A, const TrajectorySet& B, double thr, const ExtendedMetricParams& params);

/// Normalized switch fraction and per-frame average matched distance of a
/// given permutation sequence: swi = (1/(T-1)) sum 1(sigma(t) != sigma(t+1)),
/// dist = (1/T) sum_t sum_i d+(A+_i(t), B+_{sigma_i(t)}(t)).
struct SwiDist {
    double swi = 0.0;
    double dist = 0.0;
};
SwiDist swi_dist(const PermutationSequence& S, const ExtendedPair& pair, const ExtendedMetricParams& params);
SwiDist swi_dist(const PermutationSequence& S, const DistanceMatrixSequence& dmats);

/// Exact global optimum of K(Sigma) + sum of matched d+ over all permutation
/// sequences, by depth-first search with branch-and-bound. Throws
/// InstanceTooLarge when (m!)^T exceeds `enumeration_cap`.
MetricResult d_nat_bruteforce(const TrajectorySet& A, const TrajectorySet& B, const SwitchCost& K,
                              const ExtendedMetricParams& params, std::uint64_t enumeration_cap = 10000000);
MetricResult d_nat_bruteforce(const DistanceMatrixSequence& dmats, const SwitchCost& K,
                              std::uint64_t enumeration_cap = 10000000);

// --- counterexample constructions ---

/// Crossing 1-D trajectories on which the CLEAR MOT association is forced
/// into one identity switch although a switch-free association is nearly
/// perfect. Also carries the set C (C_1 identical to A_1) that breaks MOTP's
/// triangle inequality. Valid for thr in the open interval scale*(1, 2) where
/// scale = thr_scale(); the base construction uses thr around 1.5 and is
/// rescaled in space for other thresholds, and stacked in a second dimension
/// for m > 2.
struct CrossingExample {
    TrajectorySet A, B, C;
    double scale = 1.0;   // spatial rescaling applied (thr / 1.5)
    int t_window_end = 12;
};
CrossingExample build_crossing_example(double thr, int T, std::size_t m = 2);

/// The three 1-D sets of the maxcount counterexample (three points each,
/// values +-2): d_nat with K_maxcount(alpha=1, beta=1) gives D(A,B) = 1,
/// D(B,C) = 1 but D(A,C) >= 4.
struct MaxcountExample {
    TrajectorySet A, B, C;
};
MaxcountExample build_maxcount_example();

/// The sequence pair showing K_maxcount(beta=1) is not subadditive:
/// K(Sigma) = K(Sigma') = 1 but K(Sigma' o Sigma) = inf.
struct MaxcountSequences {
    PermutationSequence sigma, sigma_prime;
};
MaxcountSequences build_maxcount_sequences();

}  // namespace trajdist
