#pragma once

#include "trajdist/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace trajdist {

/// SplitMix64: the documented deterministic stream behind all generation, so
/// any implementation can reproduce a dataset from its seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

struct GenConfig {
    int n_traj = 25;
    int t_horizon = 50;
    int state_dim = 2;
    double amp_noise = 0.0;  // per-coordinate uniform noise in [-amp, amp]
    double frag_prob = 0.0;  // probability of splitting a track at each interior instant
    double del_prob = 0.0;   // probability of deleting each point
    double swi_dist = 0.0;   // encounter distance below which two IDs may swap
    std::uint64_t seed = 1;
};

/// Ground truth A (random births/deaths, piecewise-constant-velocity motion
/// with random direction changes) and a distorted copy B produced by, in
/// order: fragmentation, per-point deletion, additive noise, and persistent
/// ID swaps at close encounters (each flipped with probability 1/2).
/// Deterministic in cfg.seed.
std::pair<TrajectorySet, TrajectorySet> generate_pair(const GenConfig& cfg);

enum class Knob { amp_noise, frag_prob, del_prob, swi_dist };

struct SweepCell {
    double knob_value = 0.0;
    double mean_auc_comp = 0.0;
    double mean_auc_motp = 0.0;
    double se_auc_comp = 0.0;  // standard error over repeats
    double se_auc_motp = 0.0;
    int n_repeats = 0;
};

/// For each knob value, generates n_repeats pairs (seeds derived from
/// base.seed), computes the D_comp trade-off AUC and the MOTP thr-curve AUC
/// in a shared per-instance normalization box, and averages.
std::vector<SweepCell> knob_sweep(const GenConfig& base, Knob knob, const std::vector<double>& values,
                                  int n_repeats, const ExtendedMetricParams& params,
                                  std::size_t n_alphas = 8, std::size_t n_thrs = 8);

}  // namespace trajdist
