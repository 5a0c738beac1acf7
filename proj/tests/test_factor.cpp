#include <doctest.h>

#include "powcirc/factor.hpp"
#include "testutil.hpp"

using namespace powcirc;

TEST_CASE("squarefree decomposition examples") {
    PrimeField f11(11);
    UniPoly xp1 = UniPoly::from_ints(f11, std::vector<i64>{1, 1});
    UniPoly xp2 = UniPoly::from_ints(f11, std::vector<i64>{2, 1});
    auto parts = squarefree_decomposition(xp1 * xp1 * xp2);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == xp2);
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == xp1);
    CHECK(parts[1].second == 2);

    // A squarefree input decomposes as itself with multiplicity 1.
    UniPoly sf = UniPoly::from_ints(f11, std::vector<i64>{3, 5, 1});
    auto single = squarefree_decomposition(sf.scaled(7));
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == sf.monic());
    CHECK(single[0].second == 1);

    PrimeField f31(31);
    UniPoly x = UniPoly::x(f31);
    UniPoly xp1b = UniPoly::from_ints(f31, std::vector<i64>{1, 1});
    auto cascade = squarefree_decomposition(x.pow(3) * xp1b.pow(3));
    REQUIRE(cascade.size() == 1);
    CHECK(cascade[0].first == x * xp1b);
    CHECK(cascade[0].second == 3);

    // p <= deg is rejected.
    PrimeField f5(5);
    CHECK_THROWS_AS(squarefree_decomposition(UniPoly::monomial(f5, 1, 6)), error);
}

TEST_CASE("factor_univariate examples") {
    PrimeField f7(7);
    Factorization roots = factor_univariate(UniPoly::from_ints(f7, std::vector<i64>{-1, 0, 1}));
    CHECK(roots.unit == 1);
    REQUIRE(roots.factors.size() == 2);
    CHECK(roots.factors[0].first == UniPoly::from_ints(f7, std::vector<i64>{1, 1}));
    CHECK(roots.factors[1].first == UniPoly::from_ints(f7, std::vector<i64>{6, 1}));

    Factorization irr = factor_univariate(UniPoly::from_ints(f7, std::vector<i64>{1, 0, 1}));
    REQUIRE(irr.factors.size() == 1);
    CHECK(irr.factors[0].first == UniPoly::from_ints(f7, std::vector<i64>{1, 0, 1}));
    CHECK(irr.factors[0].second == 1);

    PrimeField f11(11);
    UniPoly xp3 = UniPoly::from_ints(f11, std::vector<i64>{3, 1});
    Factorization scaled = factor_univariate((xp3 * xp3).scaled(3));
    CHECK(scaled.unit == 3);
    REQUIRE(scaled.factors.size() == 1);
    CHECK(scaled.factors[0].first == xp3);
    CHECK(scaled.factors[0].second == 2);
}

TEST_CASE("factorization round-trips") {
    PrimeField f(101);
    SplitMix64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        // Random product of irreducibles with multiplicities.
        UniPoly g = UniPoly::constant(f, static_cast<i64>(1 + rng.below(100)));
        int nfac = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < nfac; ++i) {
            // Random linear or quadratic factor; the round trip holds either way.
            UniPoly phi = rng.below(2) == 0 ? UniPoly(f, {rng.below(101), 1})
                                            : UniPoly(f, {rng.below(101), rng.below(101), 1});
            g = g * phi.pow(1 + rng.below(3));
        }
        Factorization fact = factor_univariate(g);
        CHECK(fact.product(f) == g);
        // Degrees add up.
        i64 sum = 0;
        for (const auto& [phi, mult] : fact.factors) sum += phi.degree() * static_cast<i64>(mult);
        CHECK(sum == g.degree());
        // Pairwise distinct, canonically sorted factors.
        for (std::size_t i = 0; i + 1 < fact.factors.size(); ++i) {
            CHECK(compare_canonical(fact.factors[i].first, fact.factors[i + 1].first) < 0);
        }
        // Low-degree irreducibility: no roots for quadratic+ factors.
        for (const auto& [phi, mult] : fact.factors) {
            if (phi.degree() >= 2) {
                bool has_root = false;
                for (u64 c = 0; c < f.p(); ++c) has_root = has_root || phi.eval(c) == 0;
                CHECK_FALSE(has_root);
            }
        }
    }
}

TEST_CASE("factorization with higher-degree irreducibles") {
    // x^4 + x + 1 style polynomials over a small field exercise the
    // equal-degree machinery deterministically.
    PrimeField f(13);
    SplitMix64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<u64> c(1 + 1 + rng.below(6));
        for (auto& v : c) v = rng.below(13);
        c.back() = 1 + rng.below(12);
        UniPoly g(f, c);
        if (g.degree() < 1) continue;
        Factorization fact = factor_univariate(g);
        CHECK(fact.product(f) == g);
    }
}

TEST_CASE("perfect_dth_root examples") {
    PrimeField f211(211);
    UniPoly xp5 = UniPoly::from_ints(f211, std::vector<i64>{5, 1});
    auto pp = perfect_dth_root(xp5.pow(20).scaled(3), 20);
    REQUIRE(pp.has_value());
    CHECK(pp->first == 3);
    CHECK(pp->second == xp5);

    PrimeField f7(7);
    CHECK_FALSE(perfect_dth_root(UniPoly::from_ints(f7, std::vector<i64>{0, 1, 1}), 2).has_value());

    PrimeField f37(37);
    auto mono = perfect_dth_root(UniPoly::monomial(f37, 1, 17), 17);
    REQUIRE(mono.has_value());
    CHECK(mono->first == 1);
    CHECK(mono->second == UniPoly::x(f37));

    // Exhaustive small round trip: h monic of degree <= 2 over F_101, d = 3.
    PrimeField f(101);
    for (u64 c0 = 0; c0 < 6; ++c0) {
        for (u64 c1 = 0; c1 < 6; ++c1) {
            UniPoly h(f, {c0, c1, 1});
            auto back = perfect_dth_root(h.pow(3), 3);
            REQUIRE(back.has_value());
            CHECK(back->first == 1);
            CHECK(back->second == h);
        }
    }
}
