#include "trajdist/permutation.hpp"

#include "doctest.h"

using namespace trajdist;

namespace {
Permutation perm(std::vector<int> v) { return Permutation(std::move(v)); }
}

TEST_CASE("compose basics") {
    const auto id3 = Permutation::identity(3);
    const auto s = perm({2, 3, 1});
    CHECK(compose(id3, s) == s);
    CHECK(compose(s, id3) == s);
    CHECK(compose(perm({2, 1}), perm({2, 1})) == Permutation::identity(2));
    CHECK(compose(perm({2, 3, 1}), perm({3, 1, 2})) == id3);
    CHECK_THROWS_AS(compose(id3, Permutation::identity(2)), InvalidInput);
}

TEST_CASE("compose is associative (exhaustive m = 4)") {
    const auto pi = all_permutations(4);
    for (const auto& a : pi)
        for (const auto& b : pi)
            for (const auto& c : pi)
                CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
}

TEST_CASE("inverse") {
    CHECK(inverse(Permutation::identity(4)) == Permutation::identity(4));
    CHECK(inverse(perm({2, 1})) == perm({2, 1}));
    CHECK(inverse(perm({2, 3, 1})) == perm({3, 1, 2}));
    for (const auto& s : all_permutations(5))
        CHECK(compose(s, inverse(s)) == Permutation::identity(5));
}

TEST_CASE("cayley distance equals m minus cycle count") {
    CHECK(cayley_distance(Permutation::identity(3)) == 0);
    CHECK(cayley_distance(perm({2, 1})) == 1);
    CHECK(cayley_distance(perm({2, 3, 1})) == 2);

    // Brute-force oracle: BFS depth over transposition products, m = 4.
    const auto pi = all_permutations(4);
    auto index_of = [&](const Permutation& p) {
        for (std::size_t i = 0; i < pi.size(); ++i)
            if (pi[i] == p) return i;
        return pi.size();
    };
    std::vector<int> depth(pi.size(), -1);
    depth[index_of(Permutation::identity(4))] = 0;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < pi.size(); ++i) {
            if (depth[i] < 0) continue;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    auto v = pi[i].mapping();
                    std::swap(v[static_cast<std::size_t>(a)], v[static_cast<std::size_t>(b)]);
                    const std::size_t j = index_of(Permutation(v));
                    if (depth[j] < 0 || depth[j] > depth[i] + 1) {
                        depth[j] = depth[i] + 1;
                        grew = true;
                    }
                }
        }
    }
    for (std::size_t i = 0; i < pi.size(); ++i)
        CHECK(cayley_distance(pi[i]) == depth[i]);
}

TEST_CASE("kendall distance equals bubble-sort swap count") {
    CHECK(kendall_distance(Permutation::identity(4)) == 0);
    CHECK(kendall_distance(perm({2, 1})) == 1);
    CHECK(kendall_distance(perm({3, 2, 1})) == 3);

    for (const auto& s : all_permutations(5)) {
        auto v = s.mapping();
        int swaps = 0;
        bool sorted = false;
        while (!sorted) {
            sorted = true;
            for (std::size_t i = 0; i + 1 < v.size(); ++i)
                if (v[i] > v[i + 1]) {
                    std::swap(v[i], v[i + 1]);
                    ++swaps;
                    sorted = false;
                }
        }
        CHECK(kendall_distance(s) == swaps);
    }
}

TEST_CASE("cayley <= kendall, conjugation invariance, subadditivity (exhaustive)") {
    for (std::size_t m = 2; m <= 5; ++m)
        for (const auto& s : all_permutations(m))
            CHECK(cayley_distance(s) <= kendall_distance(s));

    const auto pi = all_permutations(4);
    for (const auto& s : pi)
        for (const auto& t : pi) {
            CHECK(cayley_distance(compose(compose(t, s), inverse(t))) == cayley_distance(s));
            CHECK(cayley_distance(compose(s, t)) <= cayley_distance(s) + cayley_distance(t));
        }
}

TEST_CASE("switch_cost per kind") {
    const Permutation id = Permutation::identity(2);
    const Permutation sw = perm({2, 1});
    PermutationSequence one_switch;
    one_switch.seq = {id, sw, sw};

    CHECK(switch_cost(SwitchCost(SwitchKind::count, 1.0), one_switch) == doctest::Approx(1.0));
    CHECK(switch_cost(SwitchCost(SwitchKind::trans, 1.0), one_switch) == doctest::Approx(1.0));
    CHECK(switch_cost(SwitchCost(SwitchKind::adjtrans, 1.0), one_switch) == doctest::Approx(1.0));
    CHECK(switch_cost(SwitchCost(SwitchKind::maxcount, 1.0, 1), one_switch) == doctest::Approx(1.0));
    CHECK(switch_cost(SwitchCost(SwitchKind::ospa, 1.0), one_switch) == kInfCost);

    PermutationSequence constant;
    constant.seq = {sw, sw, sw};
    for (auto kind : {SwitchKind::count, SwitchKind::trans, SwitchKind::adjtrans, SwitchKind::ospa})
        CHECK(switch_cost(SwitchCost(kind, 2.0), constant) == 0.0);
    CHECK(switch_cost(SwitchCost(SwitchKind::maxcount, 1.0, 1), constant) == 0.0);
}

TEST_CASE("switch_cost scales linearly in alpha") {
    const auto pi = all_permutations(3);
    PermutationSequence s;
    s.seq = {pi[0], pi[3], pi[5], pi[1]};
    for (auto kind : {SwitchKind::count, SwitchKind::trans, SwitchKind::adjtrans}) {
        const double base = switch_cost(SwitchCost(kind, 1.0), s);
        CHECK(switch_cost(SwitchCost(kind, 2.5), s) == doctest::Approx(2.5 * base));
    }
}

TEST_CASE("maxcount composition blows the budget") {
    const Permutation id = Permutation::identity(2);
    const Permutation s0 = perm({2, 1});
    PermutationSequence sigma, sigma_prime;
    sigma.seq = {id, s0, s0};
    sigma_prime.seq = {id, id, s0};
    const SwitchCost K(SwitchKind::maxcount, 1.0, 1);
    CHECK(switch_cost(K, sigma) == doctest::Approx(1.0));
    CHECK(switch_cost(K, sigma_prime) == doctest::Approx(1.0));
    CHECK(switch_cost(K, compose(sigma_prime, sigma)) == kInfCost);
}

TEST_CASE("K axioms: count/trans clean everywhere, adjtrans clean for m = 2") {
    for (auto kind : {SwitchKind::count, SwitchKind::trans}) {
        CHECK(check_K_axioms(SwitchCost(kind, 1.0), 2, 3).ok());       // exhaustive, 64 pairs
        CHECK(check_K_axioms(SwitchCost(kind, 1.0), 3, 2).ok());       // exhaustive, 1296 pairs
        CHECK(check_K_axioms(SwitchCost(kind, 0.5), 4, 4, 1000, 3).ok());  // sampled
    }
    // S_2 is abelian, so every length function is subadditive there.
    CHECK(check_K_axioms(SwitchCost(SwitchKind::adjtrans, 1.0), 2, 3).ok());
    CHECK(check_K_axioms(SwitchCost(SwitchKind::adjtrans, 2.0), 2, 4).ok());
}

TEST_CASE("adjtrans axioms (ii) and (iii) fail for m >= 3") {
    // Inversion count is not invariant under conjugation. The step cost of an
    // inverted sequence and the step cost of a composed pair are conjugates of
    // the original steps, so once m >= 3 both the inverse-invariance axiom and
    // subadditivity can fail. The checker must surface genuine witnesses.
    const SwitchCost K(SwitchKind::adjtrans, 1.0);
    const auto report = check_K_axioms(K, 3, 2);
    REQUIRE(!report.ok());
    bool saw_inverse = false, saw_subadd = false;
    for (const auto& v : report.violations) {
        REQUIRE((v.axiom == 2 || v.axiom == 3));
        if (v.axiom == 2) {
            saw_inverse = true;
            CHECK(switch_cost(K, inverse(v.sigma)) != switch_cost(K, v.sigma));
        } else {
            saw_subadd = true;
            CHECK(v.lhs > v.rhs + 1e-12);
            // Re-verify the witness from first principles.
            const auto composed = compose(v.sigma, v.sigma_prime);
            double direct = 0.0;
            for (std::size_t t = 0; t + 1 < composed.seq.size(); ++t)
                direct += kendall_distance(compose(composed.seq[t + 1], inverse(composed.seq[t])));
            CHECK(direct > switch_cost(K, v.sigma) + switch_cost(K, v.sigma_prime) + 1e-12);
        }
    }
    CHECK(saw_inverse);
    CHECK(saw_subadd);
}

TEST_CASE("maxcount violates subadditivity and the checker reports it") {
    const auto report = check_K_axioms(SwitchCost(SwitchKind::maxcount, 1.0, 1), 2, 3);
    CHECK(!report.ok());
    bool found_subadditivity_witness = false;
    for (const auto& v : report.violations)
        if (v.axiom == 3) found_subadditivity_witness = true;
    CHECK(found_subadditivity_witness);
}
