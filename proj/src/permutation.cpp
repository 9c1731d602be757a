#include "trajdist/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace trajdist {

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
        if (v < 1 || static_cast<std::size_t>(v) > map_.size() || seen[static_cast<std::size_t>(v - 1)])
            throw InvalidInput("not a permutation of [m]");
        seen[static_cast<std::size_t>(v - 1)] = 1;
    }
}

Permutation Permutation::identity(std::size_t m) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] != static_cast<int>(i) + 1) return false;
    return true;
}

Permutation compose(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw InvalidInput("compose: size mismatch");
    std::vector<int> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = s[static_cast<std::size_t>(t[i] - 1)];
    return Permutation(std::move(out));
}

Permutation inverse(const Permutation& s) {
    std::vector<int> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[static_cast<std::size_t>(s[i] - 1)] = static_cast<int>(i) + 1;
    return Permutation(std::move(out));
}

int cayley_distance(const Permutation& s) {
    const std::size_t m = s.size();
    std::vector<char> visited(m, 0);
    int cycles = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (visited[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!visited[j]) {
            visited[j] = 1;
            j = static_cast<std::size_t>(s[j] - 1);
        }
    }
    return static_cast<int>(m) - cycles;
}

namespace {

// Merge-count of inversions; buf is scratch of the same length.
int count_inversions(std::vector<int>& v, std::vector<int>& buf, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 1) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    int inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    std::size_t a = lo, b = mid, o = lo;
    while (a < mid && b < hi) {
        if (v[a] <= v[b]) buf[o++] = v[a++];
        else { inv += static_cast<int>(mid - a); buf[o++] = v[b++]; }
    }
    while (a < mid) buf[o++] = v[a++];
    while (b < hi) buf[o++] = v[b++];
    std::copy(buf.begin() + static_cast<long>(lo), buf.begin() + static_cast<long>(hi),
              v.begin() + static_cast<long>(lo));
    return inv;
}

}  // namespace

int kendall_distance(const Permutation& s) {
    std::vector<int> v = s.mapping();
    std::vector<int> buf(v.size());
    return count_inversions(v, buf, 0, v.size());
}

std::vector<Permutation> all_permutations(std::size_t m) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

bool PermutationSequence::is_constant() const {
    for (std::size_t t = 1; t < seq.size(); ++t)
        if (seq[t] != seq[0]) return false;
    return true;
}

PermutationSequence compose(const PermutationSequence& s, const PermutationSequence& t) {
    if (s.t_len() != t.t_len()) throw InvalidInput("compose: sequence length mismatch");
    PermutationSequence out;
    out.seq.reserve(s.t_len());
    for (std::size_t i = 0; i < s.t_len(); ++i) out.seq.push_back(compose(s.seq[i], t.seq[i]));
    return out;
}

PermutationSequence inverse(const PermutationSequence& s) {
    PermutationSequence out;
    out.seq.reserve(s.t_len());
    for (const auto& p : s.seq) out.seq.push_back(inverse(p));
    return out;
}

double switch_step_cost(const SwitchCost& K, const Permutation& prev, const Permutation& next) {
    switch (K.kind) {
        case SwitchKind::count:
            return next != prev ? K.alpha : 0.0;
        case SwitchKind::trans:
            return K.alpha * cayley_distance(compose(next, inverse(prev)));
        case SwitchKind::adjtrans:
            return K.alpha * kendall_distance(compose(next, inverse(prev)));
        default:
            throw InvalidInput("switch_step_cost: kind has no per-step decomposition");
    }
}

double switch_cost(const SwitchCost& K, const PermutationSequence& S) {
    if (S.t_len() < 1) throw InvalidInput("switch_cost: empty sequence");
    if (K.kind == SwitchKind::ospa)
        return S.is_constant() ? 0.0 : kInfCost;
    if (K.kind == SwitchKind::maxcount) {
        int changes = 0;
        for (std::size_t t = 0; t + 1 < S.t_len(); ++t)
            if (S.seq[t + 1] != S.seq[t]) ++changes;
        return changes > K.beta ? kInfCost : K.alpha * changes;
    }
    double total = 0.0;
    for (std::size_t t = 0; t + 1 < S.t_len(); ++t)
        total += switch_step_cost(K, S.seq[t], S.seq[t + 1]);
    return total;
}

namespace {

std::uint64_t ipow_capped(std::uint64_t base, std::size_t expn, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < expn; ++i) {
        if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
        r *= base;
    }
    return r;
}

PermutationSequence sequence_from_index(std::uint64_t idx, const std::vector<Permutation>& pi, std::size_t T) {
    PermutationSequence s;
    s.seq.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        s.seq.push_back(pi[idx % pi.size()]);
        idx /= pi.size();
    }
    return s;
}

void check_pair(const SwitchCost& K, const PermutationSequence& a, const PermutationSequence& b,
                KAxiomReport& report) {
    const double ka = switch_cost(K, a);
    // (i) zero iff constant.
    if ((ka == 0.0) != a.is_constant())
        report.violations.push_back({1, a, {}, ka, a.is_constant() ? 0.0 : -1.0});
    // (ii) inverse invariance.
    const double kinv = switch_cost(K, inverse(a));
    if (kinv != ka) report.violations.push_back({2, a, {}, kinv, ka});
    // (iii) subadditivity, both composition orders.
    const double kb = switch_cost(K, b);
    const double kab = switch_cost(K, compose(a, b));
    const double kba = switch_cost(K, compose(b, a));
    const double bound = ka + kb;
    if (kab > bound + 1e-12) report.violations.push_back({3, a, b, kab, bound});
    if (kba > bound + 1e-12) report.violations.push_back({3, b, a, kba, bound});
}

}  // namespace

KAxiomReport check_K_axioms(const SwitchCost& K, std::size_t m, std::size_t T,
                            std::uint64_t n_samples, std::uint64_t seed, std::uint64_t exhaustive_cap) {
    KAxiomReport report;
    const auto pi = all_permutations(m);
    const std::uint64_t n_seq = ipow_capped(pi.size(), T, exhaustive_cap);
    if (n_seq <= exhaustive_cap && n_seq * n_seq <= exhaustive_cap) {
        report.exhaustive = true;
        for (std::uint64_t i = 0; i < n_seq; ++i) {
            const auto a = sequence_from_index(i, pi, T);
            for (std::uint64_t j = 0; j < n_seq; ++j) {
                check_pair(K, a, sequence_from_index(j, pi, T), report);
                ++report.pairs_checked;
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, pi.size() - 1);
        for (std::uint64_t s = 0; s < n_samples; ++s) {
            PermutationSequence a, b;
            for (std::size_t t = 0; t < T; ++t) {
                a.seq.push_back(pi[pick(rng)]);
                b.seq.push_back(pi[pick(rng)]);
            }
            check_pair(K, a, b, report);
            ++report.pairs_checked;
        }
    }
    return report;
}

}  // namespace trajdist
