#pragma once

#include "trajdist/types.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace trajdist {

/// A permutation of [m], stored one-based: map(i) = sigma_{i+1}.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> mapping);

    static Permutation identity(std::size_t m);

    std::size_t size() const { return map_.size(); }
    int operator[](std::size_t i) const { return map_[i]; }  // i zero-based, value one-based
    const std::vector<int>& mapping() const { return map_; }

    bool is_identity() const;
    bool operator==(const Permutation& o) const { return map_ == o.map_; }
    bool operator!=(const Permutation& o) const { return map_ != o.map_; }
    bool operator<(const Permutation& o) const { return map_ < o.map_; }

private:
    std::vector<int> map_;
};

/// (s o t)_i = s_{t_i}.
Permutation compose(const Permutation& s, const Permutation& t);
Permutation inverse(const Permutation& s);

/// Minimum number of transpositions reducing s to the identity: m - #cycles.
int cayley_distance(const Permutation& s);

/// Number of adjacent transpositions bubble sort performs: inversion count.
int kendall_distance(const Permutation& s);

/// All m! permutations of [m], lexicographic order.
std::vector<Permutation> all_permutations(std::size_t m);

struct PermutationSequence {
    std::vector<Permutation> seq;  // length T, uniform size m

    std::size_t t_len() const { return seq.size(); }
    std::size_t m() const { return seq.empty() ? 0 : seq[0].size(); }
    bool is_constant() const;

    bool operator==(const PermutationSequence& o) const { return seq == o.seq; }
};

PermutationSequence compose(const PermutationSequence& s, const PermutationSequence& t);
PermutationSequence inverse(const PermutationSequence& s);

enum class SwitchKind { count, trans, adjtrans, ospa, maxcount };

struct SwitchCost {
    SwitchKind kind = SwitchKind::count;
    double alpha = 1.0;
    int beta = 1;  // budget, maxcount only

    SwitchCost() = default;
    SwitchCost(SwitchKind kind_, double alpha_, int beta_ = 1) : kind(kind_), alpha(alpha_), beta(beta_) {
        if (!(alpha > 0.0)) throw InvalidInput("switch cost: alpha must be > 0");
        if (kind == SwitchKind::maxcount && beta < 1) throw InvalidInput("switch cost: beta must be >= 1");
    }
};

constexpr double kInfCost = std::numeric_limits<double>::infinity();

/// K(Sigma) for the selected kind. May be +inf for ospa/maxcount.
double switch_cost(const SwitchCost& K, const PermutationSequence& S);

/// Per-step increment k(next o prev^-1) scaled by alpha, for count/trans/adjtrans.
/// Used by the brute-force metric to accumulate K along a sequence.
double switch_step_cost(const SwitchCost& K, const Permutation& prev, const Permutation& next);

struct KAxiomViolation {
    int axiom = 0;  // 1: zero-iff-constant, 2: inverse invariance, 3: subadditivity
    PermutationSequence sigma, sigma_prime;
    double lhs = 0.0, rhs = 0.0;
};

struct KAxiomReport {
    std::vector<KAxiomViolation> violations;
    std::uint64_t pairs_checked = 0;
    bool exhaustive = false;
    bool ok() const { return violations.empty(); }
};

/// Checks the switch-cost axioms (zero iff constant, inverse invariance,
/// subadditivity) for K over sequence pairs of shape (m, T).
/// Exhaustive when (m!)^T squared stays under `exhaustive_cap`,
/// otherwise `n_samples` seeded random pairs. Subadditivity is tested in both
/// composition orders.
KAxiomReport check_K_axioms(const SwitchCost& K, std::size_t m, std::size_t T,
                            std::uint64_t n_samples = 1000, std::uint64_t seed = 1,
                            std::uint64_t exhaustive_cap = 100000);

}  // namespace trajdist
