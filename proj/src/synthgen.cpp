#include "trajdist/synthgen.hpp"

#include "trajdist/comp.hpp"
#include "trajdist/extend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trajdist {

namespace {

void validate(const GenConfig& cfg) {
    if (cfg.n_traj < 1 || cfg.t_horizon < 2 || cfg.state_dim < 1)
        throw InvalidInput("generate_pair: need n_traj >= 1, t_horizon >= 2, state_dim >= 1");
    for (double p : {cfg.frag_prob, cfg.del_prob})
        if (p < 0.0 || p > 1.0) throw InvalidInput("generate_pair: probabilities must be in [0,1]");
    if (cfg.amp_noise < 0.0 || cfg.swi_dist < 0.0)
        throw InvalidInput("generate_pair: amplitudes must be nonnegative");
}

Vector random_heading(SplitMix64& rng, int dim) {
    if (dim == 1) {
        Vector h(1);
        h << (rng.uniform() < 0.5 ? -1.0 : 1.0);
        return h;
    }
    if (dim == 2) {
        const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
        Vector h(2);
        h << std::cos(a), std::sin(a);
        return h;
    }
    // Normalized Box-Muller Gaussians for higher dimensions.
    Vector h(dim);
    for (int d = 0; d < dim; ++d) {
        const double u1 = std::max(rng.uniform(), 1e-300);
        const double u2 = rng.uniform();
        h[d] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    const double n = h.norm();
    return n > 0.0 ? Vector(h / n) : random_heading(rng, dim);
}

}  // namespace

std::pair<TrajectorySet, TrajectorySet> generate_pair(const GenConfig& cfg) {
    validate(cfg);
    SplitMix64 rng(cfg.seed);
    const int T = cfg.t_horizon;

    TrajectorySet A;
    for (int k = 0; k < cfg.n_traj; ++k) {
        const int birth = rng.uniform_int(1, std::max(1, T / 2));
        const int death = rng.uniform_int(std::min(birth + T / 4, T), T);
        Vector pos(cfg.state_dim);
        for (int d = 0; d < cfg.state_dim; ++d) pos[d] = rng.uniform(0.0, 100.0);
        Vector heading = random_heading(rng, cfg.state_dim);
        Trajectory tr;
        tr.set(birth, pos);
        for (int t = birth + 1; t <= death; ++t) {
            if (rng.uniform() < 0.1) heading = random_heading(rng, cfg.state_dim);
            pos += rng.uniform(0.5, 2.0) * heading;
            tr.set(t, pos);
        }
        A.trajectories.push_back(std::move(tr));
    }

    // Fragmentation: each interior instant of an A track independently starts
    // a new fragment with probability frag_prob.
    std::vector<Trajectory> frags;
    for (const auto& tr : A.trajectories) {
        Trajectory cur;
        bool first = true;
        for (const auto& [t, x] : tr.points()) {
            if (!first && rng.uniform() < cfg.frag_prob) {
                frags.push_back(std::move(cur));
                cur = Trajectory();
            }
            cur.set(t, x);
            first = false;
        }
        if (!cur.points().empty()) frags.push_back(std::move(cur));
    }

    // Per-point deletion, then additive noise.
    std::vector<Trajectory> tracks;
    for (const auto& fr : frags) {
        Trajectory kept;
        for (const auto& [t, x] : fr.points()) {
            if (rng.uniform() < cfg.del_prob) continue;
            Vector y = x;
            for (int d = 0; d < cfg.state_dim; ++d)
                y[d] += rng.uniform(-cfg.amp_noise, cfg.amp_noise);
            kept.set(t, y);
        }
        if (!kept.points().empty()) tracks.push_back(std::move(kept));
    }

    // Persistent ID swaps: when two tracks come within swi_dist (the start of
    // a contiguous close encounter), flip their identities from that instant
    // onward with probability 1/2.
    if (cfg.swi_dist > 0.0 && tracks.size() >= 2) {
        const std::size_t n = tracks.size();
        std::vector<std::vector<char>> in_range(n, std::vector<char>(n, 0));
        for (int t = 1; t <= T; ++t)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const bool both = tracks[i].has(t) && tracks[j].has(t);
                    const bool close = both && (tracks[i].at(t) - tracks[j].at(t)).norm() < cfg.swi_dist;
                    if (close && !in_range[i][j] && rng.uniform() < 0.5) {
                        // Exchange all points from t onward.
                        Trajectory a, b;
                        for (const auto& [s, x] : tracks[i].points()) (s >= t ? b : a).set(s, x);
                        for (const auto& [s, x] : tracks[j].points()) (s >= t ? a : b).set(s, x);
                        tracks[i] = std::move(a);
                        tracks[j] = std::move(b);
                    }
                    in_range[i][j] = close ? 1 : 0;
                }
        std::erase_if(tracks, [](const Trajectory& tr) { return tr.points().empty(); });
    }

    TrajectorySet B;
    B.trajectories = std::move(tracks);
    return {std::move(A), std::move(B)};
}

std::vector<SweepCell> knob_sweep(const GenConfig& base, Knob knob, const std::vector<double>& values,
                                  int n_repeats, const ExtendedMetricParams& params,
                                  std::size_t n_alphas, std::size_t n_thrs) {
    if (values.empty() || n_repeats < 1) throw InvalidInput("knob_sweep: empty values or repeats < 1");
    std::vector<SweepCell> cells;
    for (std::size_t v = 0; v < values.size(); ++v) {
        GenConfig cfg = base;
        switch (knob) {
            case Knob::amp_noise: cfg.amp_noise = values[v]; break;
            case Knob::frag_prob: cfg.frag_prob = values[v]; break;
            case Knob::del_prob: cfg.del_prob = values[v]; break;
            case Knob::swi_dist: cfg.swi_dist = values[v]; break;
        }
        SweepCell cell;
        cell.knob_value = values[v];
        cell.n_repeats = n_repeats;
        double sum_c = 0.0, sum_m = 0.0, sq_c = 0.0, sq_m = 0.0;
        for (int r = 0; r < n_repeats; ++r) {
            cfg.seed = base.seed + 1000003ULL * (static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(n_repeats) + static_cast<std::uint64_t>(r));
            auto [A, B] = generate_pair(cfg);
            const auto dmats = distance_matrices(extend_pair(A, B), params);

            CompParams cp;
            cp.norm = MatrixNorm::entrywise;
            cp.max_iter = 150;
            auto comp_curve = tradeoff_curve(dmats, cp, default_alpha_grid(dmats, n_alphas));

            std::vector<double> thr_grid;
            for (std::size_t k = 0; k < n_thrs; ++k) {
                const double f = n_thrs > 1 ? static_cast<double>(k) / static_cast<double>(n_thrs - 1) : 0.5;
                thr_grid.push_back(2.0 * params.miss_penalty * std::pow(10.0, -3.0 + 3.0 * f));
            }
            auto mot_curve = motp_curve(A, B, params, thr_grid);

            // Shared normalization box so the two AUCs are comparable.
            double max_dist = 0.0, max_swi = 0.0;
            for (const auto* c : {&comp_curve, &mot_curve})
                for (const auto& p : c->points) {
                    if (!p.ok) continue;
                    max_dist = std::max(max_dist, p.dist);
                    max_swi = std::max(max_swi, p.swi);
                }
            max_dist = std::max(max_dist, 1e-12);
            max_swi = std::max(max_swi, 1e-12);
            const double ac = auc(comp_curve, max_dist, max_swi);
            const double am = auc(mot_curve, max_dist, max_swi);
            sum_c += ac;
            sq_c += ac * ac;
            sum_m += am;
            sq_m += am * am;
        }
        const double n = static_cast<double>(n_repeats);
        cell.mean_auc_comp = sum_c / n;
        cell.mean_auc_motp = sum_m / n;
        if (n_repeats > 1) {
            cell.se_auc_comp = std::sqrt(std::max(0.0, sq_c / n - cell.mean_auc_comp * cell.mean_auc_comp) / (n - 1.0));
            cell.se_auc_motp = std::sqrt(std::max(0.0, sq_m / n - cell.mean_auc_motp * cell.mean_auc_motp) / (n - 1.0));
        }
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace trajdist
