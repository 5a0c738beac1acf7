#include <doctest.h>

#include "powcirc/hitting.hpp"
#include "powcirc/ks.hpp"
#include "testutil.hpp"

using namespace powcirc;

TEST_CASE("hitting set parameters for the worked configuration") {
    // n=2, r=2, s=1, delta=1, d=2: window [10, 18] gives q=11 and t=19.
    PrimeField f(4099);
    HittingSetSpec hs = build_hitting_set(f, 2, 2, 1, 2, 1, Rat(1, 2));
    CHECK(hs.q() == 11);
    CHECK(hs.t() == 19);
    // The caller budget is halved internally, so the per-k count doubles the
    // plain ceil(delta*q*d/eps) value.
    CHECK(hs.eps_internal() == Rat(1, 4));
    CHECK(hs.mk() == 88);
    CHECK(hs.size() == 19 * 88);
}

TEST_CASE("hitting set validity gates") {
    PrimeField f(4099);
    // r=1 is always valid.
    CHECK(build_hitting_set(f, 2, 1, 1, 1, 1, Rat(1, 2)).q() >= 2);
    // (r-1)^2 > d+1 is rejected.
    CHECK_THROWS_AS(build_hitting_set(f, 2, 4, 1, 7, 1, Rat(1, 2)), error);
    try {
        build_hitting_set(f, 2, 4, 1, 7, 1, Rat(1, 2));
    } catch (const error& e) {
        CHECK(e.code() == errc::unsupported);
        CHECK(std::string(e.what()).find("(r-1)^2") != std::string::npos);
    }
    // Small p rejected.
    PrimeField tiny(31);
    CHECK_THROWS_AS(build_hitting_set(tiny, 2, 2, 2, 82, 1, Rat(1, 2)), error);
    // eps > 1/2 rejected.
    CHECK_THROWS_AS(build_hitting_set(f, 2, 2, 1, 2, 1, Rat(2, 3)), error);
}

TEST_CASE("point enumeration is k-major with unit-based abscissae") {
    PrimeField f(4099);
    HittingSetSpec hs = build_hitting_set(f, 3, 1, 1, 1, 1, Rat(1, 2));
    CHECK(hs.point_k(0) == 1);
    CHECK(hs.point_alpha(0) == 1);
    std::vector<u64> first = hs.point(0);
    CHECK(first == std::vector<u64>{1, 1, 1});
    // x_1 is always alpha^1.
    for (std::size_t i = 0; i < hs.size(); i += 7) CHECK(hs.point(i)[0] == hs.point_alpha(i));
}

TEST_CASE("pit verdicts") {
    PrimeField f(4099);
    HittingSetSpec hs = build_hitting_set(f, 2, 1, 1, 3, 1, Rat(1, 2));

    PitVerdict zero = pit_test([](std::span<const u64>) { return u64(0); }, hs);
    CHECK(zero.zero);

    // f = x1^3: the first point already has x1 = 1.
    PitVerdict nz = pit_test([&](std::span<const u64> pt) { return f.pow(pt[0], 3); }, hs);
    CHECK_FALSE(nz.zero);
    CHECK(nz.witness_index == 0);
    CHECK(nz.witness_value == 1);

    // Syntactically two terms that cancel semantically.
    PitVerdict cancel = pit_test(
        [&](std::span<const u64> pt) {
            u64 a = f.pow(f.add(pt[0], pt[1]), 3);
            u64 b = f.pow(f.add(pt[1], pt[0]), 3);
            return f.sub(a, b);
        },
        hs);
    CHECK(cancel.zero);
}

TEST_CASE("bad-k count stays under the r^2 s^2 n bound") {
    PrimeField f(4099);
    SplitMix64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const u64 r = 1 + rng.below(2), s = 1 + rng.below(2), d = 4;
        const std::uint32_t n = 2;
        HittingSetSpec hs = build_hitting_set(f, n, r, s, d, 1, Rat(1, 2));
        // Plant a sum of d-th powers and count k with a vanishing formal image.
        SparsePoly expanded = SparsePoly::zero(f, n);
        for (u64 i = 0; i < r; ++i) {
            SparsePoly base = testutil::random_sparse(rng, f, n, s, 1);
            if (base.is_zero()) base = SparsePoly::variable(f, n, 1);
            expanded = expanded + base.pow(d).scaled(1 + rng.below(f.p() - 1));
        }
        if (expanded.is_zero()) continue;
        u64 bad = 0;
        for (u64 k = 1; k <= hs.t(); ++k) {
            if (psi_apply(expanded, k, hs.q()).is_zero()) ++bad;
        }
        CHECK(bad <= r * r * s * s * n);
    }
}
