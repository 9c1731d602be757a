#pragma once

#include "trajdist/types.hpp"

#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace trajdist::testing {

// 1-D trajectory from (t, value) pairs.
inline Trajectory traj1(std::initializer_list<std::pair<int, double>> pts) {
    Trajectory tr;
    for (const auto& [t, v] : pts) {
        Vector x(1);
        x << v;
        tr.set(t, x);
    }
    return tr;
}

// 1-D trajectory with consecutive times starting at 1.
inline Trajectory traj1_dense(std::initializer_list<double> vals) {
    Trajectory tr;
    int t = 1;
    for (double v : vals) {
        Vector x(1);
        x << v;
        tr.set(t++, x);
    }
    return tr;
}

inline TrajectorySet set_of(std::initializer_list<Trajectory> trs) {
    TrajectorySet s;
    s.trajectories.assign(trs.begin(), trs.end());
    return s;
}

// The four introduction scenarios.
inline TrajectorySet scenario1_A() { return set_of({traj1_dense({-1.0, -0.6, -0.2, 0.2, 0.6, 1.0})}); }
inline TrajectorySet scenario1_B() { return set_of({traj1_dense({-0.9, -0.54, -0.18, 0.18, 0.54, 0.9})}); }

inline TrajectorySet scenario2_A() {
    return set_of({traj1({{1, -1.0}, {3, -0.2}, {4, 0.2}, {5, 0.6}})});
}
inline TrajectorySet scenario2_B() {
    return set_of({traj1({{2, -0.54}, {3, -0.18}, {4, 0.18}, {5, 0.54}})});
}

inline TrajectorySet scenario3_A() {
    return set_of({traj1_dense({-0.90, -0.78, -0.66, -0.54, -0.42, -0.30}),
                   traj1_dense({-0.70, -0.42, -0.14, 0.14, 0.42, 0.70})});
}
inline TrajectorySet scenario3_B() {
    return set_of({traj1_dense({-1.00, -0.64, -0.28, 0.08, 0.44, 0.80}),
                   traj1_dense({-0.60, -0.56, -0.52, -0.48, -0.44, -0.40})});
}

inline TrajectorySet scenario4_A() {
    return set_of({traj1_dense({1.00, 0.60, 0.20, -0.20, -0.60, -1.00}),
                   traj1_dense({-1.00, -0.60, -0.20, 0.20, 0.60, 1.00})});
}
inline TrajectorySet scenario4_B() {
    return set_of({traj1_dense({1.00, 0.60, 0.20, 0.20, 0.60, 1.00}),
                   traj1_dense({-1.00, -0.60, -0.20, -0.20, -0.60, -1.00})});
}
inline TrajectorySet scenario4_C() {
    return set_of({traj1_dense({0, 0, 0, 0, 0, 0}), traj1_dense({0, 0, 0, 0, 0, 0})});
}

// n random 1-D trajectories over [1, T], values in [-2, 2], each point
// independently dropped with probability absent_prob.
inline TrajectorySet random_set(std::mt19937_64& rng, std::size_t n, int T, double absent_prob) {
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TrajectorySet s;
    for (std::size_t i = 0; i < n; ++i) {
        Trajectory tr;
        for (int t = 1; t <= T; ++t) {
            if (u(rng) < absent_prob) continue;
            Vector x(1);
            x << val(rng);
            tr.set(t, x);
        }
        s.trajectories.push_back(tr);
    }
    return s;
}

}  // namespace trajdist::testing
