#include "trajdist/extend.hpp"

#include <algorithm>
#include <limits>

namespace trajdist {

double d_plus(const StatePoint& x, const StatePoint& y, const ExtendedMetricParams& params) {
    const double M = params.miss_penalty;
    if (x.is_absent() && y.is_absent()) return 0.0;
    if (x.is_absent() || y.is_absent()) return M;
    if (x.value->size() != y.value->size())
        throw InvalidInput("d_plus: state dimensions differ (" + std::to_string(x.value->size()) +
                           " vs " + std::to_string(y.value->size()) + ")");
    return std::min(2.0 * M, (*x.value - *y.value).norm());
}

namespace {

int min_time_over(const TrajectorySet& s) {
    int tmin = std::numeric_limits<int>::max();
    for (const auto& tr : s.trajectories)
        if (!tr.empty()) tmin = std::min(tmin, tr.min_time());
    return tmin;
}

std::vector<StatePoint> pad_trajectory(const Trajectory& tr, int shift, int T) {
    std::vector<StatePoint> out(static_cast<std::size_t>(T));
    for (const auto& [t, x] : tr.points()) out[static_cast<std::size_t>(t - shift - 1)] = StatePoint(x);
    return out;
}

}  // namespace

ExtendedPair extend_pair(const TrajectorySet& A, const TrajectorySet& B) {
    const Eigen::Index pa = A.state_dim();
    const Eigen::Index pb = B.state_dim();
    if (pa != 0 && pb != 0 && pa != pb)
        throw InvalidInput("extend_pair: the two sets have different state dimensions (" +
                           std::to_string(pa) + " vs " + std::to_string(pb) + ")");
    for (const TrajectorySet* s : {&A, &B}) {
        const Eigen::Index p = s->state_dim();
        for (const auto& tr : s->trajectories)
            for (const auto& [t, x] : tr.points())
                if (x.size() != p)
                    throw InvalidInput("extend_pair: mixed state dimensions within one set");
    }

    ExtendedPair pair;
    pair.k = A.size();
    pair.l = B.size();
    pair.m = pair.k + pair.l;
    pair.p = pa != 0 ? pa : pb;

    // Re-index so the earliest observation over A u B sits at t = 1.
    int tmin = std::min(min_time_over(A), min_time_over(B));
    if (tmin == std::numeric_limits<int>::max()) tmin = 1;
    const int shift = tmin - 1;
    const int T = std::max(0, std::max(A.max_time(), B.max_time()) - shift);
    pair.t_horizon = T;

    pair.a_states.reserve(pair.m);
    pair.b_states.reserve(pair.m);
    for (const auto& tr : A.trajectories) pair.a_states.push_back(pad_trajectory(tr, shift, T));
    for (const auto& tr : B.trajectories) pair.b_states.push_back(pad_trajectory(tr, shift, T));
    const std::vector<StatePoint> all_absent(static_cast<std::size_t>(T));
    while (pair.a_states.size() < pair.m) pair.a_states.push_back(all_absent);
    while (pair.b_states.size() < pair.m) pair.b_states.push_back(all_absent);
    return pair;
}

DistanceMatrixSequence distance_matrices(const ExtendedPair& pair, const ExtendedMetricParams& params) {
    DistanceMatrixSequence seq;
    const auto m = static_cast<Eigen::Index>(pair.m);
    seq.matrices.reserve(static_cast<std::size_t>(pair.t_horizon));
    for (int t = 1; t <= pair.t_horizon; ++t) {
        Matrix D(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                D(i, j) = d_plus(pair.a(static_cast<std::size_t>(i), t),
                                 pair.b(static_cast<std::size_t>(j), t), params);
        seq.matrices.push_back(std::move(D));
    }
    return seq;
}

}  // namespace trajdist
