#include <doctest.h>

#include "powcirc/unipoly.hpp"
#include "powcirc/rng.hpp"
#include "testutil.hpp"

using namespace powcirc;

TEST_CASE("derivative examples") {
    PrimeField f7(7);
    UniPoly g = UniPoly::from_ints(f7, std::vector<i64>{1, 0, 1});  // x^2 + 1
    CHECK(g.derivative() == UniPoly::from_ints(f7, std::vector<i64>{0, 2}));
    CHECK(UniPoly::constant(f7, 5).derivative().is_zero());
    CHECK(UniPoly::monomial(f7, 1, 7).derivative().is_zero());  // characteristic kills x^7
}

TEST_CASE("gcd_monic examples") {
    PrimeField f7(7);
    UniPoly a = UniPoly::from_ints(f7, std::vector<i64>{-1, 0, 1});  // x^2 - 1
    UniPoly b = UniPoly::from_ints(f7, std::vector<i64>{-1, 1});     // x - 1
    CHECK(gcd_monic(a, b) == UniPoly::from_ints(f7, std::vector<i64>{6, 1}));
    CHECK(gcd_monic(UniPoly::x(f7), UniPoly::from_ints(f7, std::vector<i64>{1, 1})).is_one());
    PrimeField f11(11);
    UniPoly p3 = UniPoly::from_ints(f11, std::vector<i64>{3, 1});
    UniPoly p5 = UniPoly::from_ints(f11, std::vector<i64>{5, 1});
    CHECK(gcd_monic(p3 * p3, p3 * p5) == p3);
    CHECK_THROWS_AS(gcd_monic(UniPoly::zero(f11), UniPoly::zero(f11)), error);
    CHECK(gcd_monic(p3.scaled(4), UniPoly::zero(f11)) == p3);
}

TEST_CASE("interpolation examples") {
    PrimeField f31(31);
    std::vector<std::pair<u64, u64>> line{{0, 1}, {1, 2}};
    CHECK(interpolate_univariate(f31, line, 1) == UniPoly::from_ints(f31, std::vector<i64>{1, 1}));
    std::vector<std::pair<u64, u64>> point{{0, 17}};
    CHECK(interpolate_univariate(f31, point, 0) == UniPoly::constant(f31, 17));
    std::vector<std::pair<u64, u64>> squares{{1, 1}, {2, 4}, {3, 9}};
    CHECK(interpolate_univariate(f31, squares, 2) == UniPoly::monomial(f31, 1, 2));

    std::vector<std::pair<u64, u64>> dup{{1, 1}, {1, 2}};
    CHECK_THROWS_AS(interpolate_univariate(f31, dup, 1), error);
    std::vector<std::pair<u64, u64>> inconsistent{{0, 0}, {1, 1}, {2, 5}};
    CHECK_THROWS_AS(interpolate_univariate(f31, inconsistent, 1), error);
}

TEST_CASE("interpolate inverts evaluate") {
    PrimeField f(101);
    SplitMix64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        UniPoly g = testutil::random_unipoly(rng, f, 8);
        std::size_t deg_bound = 8;
        std::vector<std::pair<u64, u64>> pts;
        for (u64 x = 0; x <= deg_bound; ++x) pts.emplace_back(x, g.eval(x));
        CHECK(interpolate_univariate(f, pts, deg_bound) == g);
    }
}

TEST_CASE("ord_factor examples") {
    PrimeField f7(7);
    UniPoly x = UniPoly::x(f7);
    UniPoly xp1 = UniPoly::from_ints(f7, std::vector<i64>{1, 1});
    CHECK(ord_factor(xp1.pow(3) * x, xp1) == 3);
    CHECK(ord_factor(UniPoly::from_ints(f7, std::vector<i64>{2, 1}), xp1) == 0);
    UniPoly quad = UniPoly::from_ints(f7, std::vector<i64>{1, 0, 1});  // x^2 + 1, irreducible mod 7
    UniPoly xp3 = UniPoly::from_ints(f7, std::vector<i64>{3, 1});
    CHECK(ord_factor((quad * xp3).pow(5), quad) == 5);
    CHECK_THROWS_AS(ord_factor(UniPoly::zero(f7), xp1), error);
    CHECK_THROWS_AS(ord_factor(x, UniPoly::constant(f7, 2)), error);
}

TEST_CASE("division and ring identities") {
    PrimeField f(101);
    SplitMix64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        UniPoly a = testutil::random_unipoly(rng, f, 9);
        UniPoly b = testutil::random_unipoly(rng, f, 5);
        UniPoly c = testutil::random_unipoly(rng, f, 4);
        CHECK((a + b) * c == a * c + b * c);
        if (!b.is_zero()) {
            auto [q, r] = a.divmod(b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
        }
    }
}

TEST_CASE("compose_shift") {
    PrimeField f(101);
    SplitMix64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        UniPoly g = testutil::random_unipoly(rng, f, 7);
        u64 a = rng.below(101);
        UniPoly shifted = g.compose_shift(a);
        for (u64 x = 0; x < 10; ++x) CHECK(shifted.eval(x) == g.eval(f.add(x, a)));
    }
}

TEST_CASE("canonical polynomial order") {
    PrimeField f(7);
    UniPoly x = UniPoly::x(f);
    UniPoly xp1 = UniPoly::from_ints(f, std::vector<i64>{1, 1});
    CHECK(compare_canonical(x, xp1) < 0);                        // [0,1] < [1,1]
    CHECK(compare_canonical(UniPoly::constant(f, 3), x) < 0);    // degree first
    CHECK(compare_canonical(xp1, xp1) == 0);
}
