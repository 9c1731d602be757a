#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trajdist {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Input or parameter outside the contract (dimension mismatch, bad flag, ...).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Exact instance too large for exhaustive enumeration.
struct InstanceTooLarge : std::runtime_error {
    explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// A point of an extended trajectory: either a state in R^p or absent (`*`).
struct StatePoint {
    std::optional<Vector> value;

    StatePoint() = default;
    StatePoint(Vector v) : value(std::move(v)) {}

    static StatePoint absent() { return StatePoint{}; }
    bool is_absent() const { return !value.has_value(); }
    Eigen::Index dim() const { return value ? value->size() : 0; }

    bool operator==(const StatePoint& o) const {
        if (is_absent() != o.is_absent()) return false;
        if (is_absent()) return true;
        return value->size() == o.value->size() && *value == *o.value;
    }
};

/// A raw trajectory: strictly positive time indices, at most one state each.
/// Absence is a missing index, never an explicit `*`.
class Trajectory {
public:
    Trajectory() = default;

    void set(int t, Vector x) {
        if (t < 1) throw InvalidInput("time index must be a positive integer, got " + std::to_string(t));
        points_[t] = std::move(x);
    }

    bool has(int t) const { return points_.count(t) > 0; }
    const Vector& at(int t) const { return points_.at(t); }
    const std::map<int, Vector>& points() const { return points_; }
    bool empty() const { return points_.empty(); }
    int max_time() const { return points_.empty() ? 0 : points_.rbegin()->first; }
    int min_time() const { return points_.empty() ? 0 : points_.begin()->first; }

    bool operator==(const Trajectory& o) const { return points_ == o.points_; }

private:
    std::map<int, Vector> points_;
};

/// A finite unordered collection of trajectories. Labels are only for
/// reporting; set equality is equality up to relabeling.
struct TrajectorySet {
    std::vector<Trajectory> trajectories;
    std::vector<std::string> labels;  // optional, parallel to trajectories

    std::size_t size() const { return trajectories.size(); }

    /// Common state dimension, or 0 when the set has no points at all.
    Eigen::Index state_dim() const {
        for (const auto& tr : trajectories)
            for (const auto& [t, x] : tr.points()) return x.size();
        return 0;
    }

    int max_time() const {
        int tmax = 0;
        for (const auto& tr : trajectories) tmax = std::max(tmax, tr.max_time());
        return tmax;
    }
};

/// Parameters of the extended point metric d+.
struct ExtendedMetricParams {
    double miss_penalty = 0.0;  // M > 0, same units as the base distance

    explicit ExtendedMetricParams(double M) : miss_penalty(M) {
        if (!(M > 0.0)) throw InvalidInput("miss penalty M must be > 0");
    }
};

/// Padded pair A+, B+ with common cardinality m = k + l, every trajectory
/// defined on 1..T. Stored densely: row i of `a_plus[t-1]` access pattern is
/// a vector of StatePoint per trajectory per instant.
struct ExtendedPair {
    // a_states[i][t-1] is A+_i(t); same shape for b_states.
    std::vector<std::vector<StatePoint>> a_states;
    std::vector<std::vector<StatePoint>> b_states;
    std::size_t k = 0;  // original cardinality of A
    std::size_t l = 0;  // original cardinality of B
    std::size_t m = 0;  // k + l
    int t_horizon = 0;  // T
    Eigen::Index p = 0; // state dimension

    const StatePoint& a(std::size_t i, int t) const { return a_states[i][t - 1]; }
    const StatePoint& b(std::size_t j, int t) const { return b_states[j][t - 1]; }
};

/// Per-instant extended distance matrices, entries d+(A+_i(t), B+_j(t)).
struct DistanceMatrixSequence {
    std::vector<Matrix> matrices;  // T matrices, each m x m

    std::size_t t_len() const { return matrices.size(); }
    std::size_t m() const { return matrices.empty() ? 0 : static_cast<std::size_t>(matrices[0].rows()); }
};

}  // namespace trajdist
