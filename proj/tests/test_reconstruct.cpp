#include <doctest.h>

#include <algorithm>

#include "powcirc/circuit.hpp"
#include "powcirc/reconstruct.hpp"
#include "testutil.hpp"

using namespace powcirc;

namespace {

KernelBasis basis_of(std::vector<UniPoly> polys, i64 D) {
    return KernelBasis{echelon_canonical(polys, D), D};
}

}  // namespace

TEST_CASE("brute force recovery examples") {
    PrimeField f37(37);
    UniPoly x = UniPoly::x(f37);
    KernelBasis kb = basis_of({UniPoly::monomial(f37, 1, 17)}, 17);
    std::vector<UniPoly> factors{x};
    auto got = brute_force_recover(kb, factors, 17, 1);
    REQUIRE(got.size() == 1);
    CHECK(got[0] == x);

    // Empty factor list: the constant 1 is reported iff it lies in the span.
    KernelBasis with_one = basis_of({UniPoly::constant(f37, 1)}, 17);
    auto unit = brute_force_recover(with_one, {}, 17, 1);
    REQUIRE(unit.size() == 1);
    CHECK(unit[0].is_one());
    CHECK(brute_force_recover(kb, {}, 17, 1).empty());
}

TEST_CASE("brute force on the two-power kernel") {
    PrimeField f(331);
    UniPoly x = UniPoly::x(f);
    UniPoly xp1 = x + UniPoly::constant(f, 1);
    KernelBasis kb = basis_of({x.pow(82), xp1.pow(82)}, 82);
    std::vector<UniPoly> factors{x, xp1};
    auto got = brute_force_recover(kb, factors, 82, 1);
    REQUIRE(got.size() == 2);
    CHECK(got[0] == x);
    CHECK(got[1] == xp1);
}

TEST_CASE("dfs matches brute force and respects the budget") {
    PrimeField f(331);
    UniPoly x = UniPoly::x(f);
    UniPoly xp1 = x + UniPoly::constant(f, 1);
    KernelBasis kb = basis_of({x.pow(82), xp1.pow(82)}, 82);
    std::vector<UniPoly> factors{x, xp1};
    DfsStats stats;
    auto powers = dfs_recover(kb, factors, 82, 1, &stats);
    REQUIRE(powers.size() == 2);
    CHECK(powers[0] == x.pow(82));
    CHECK(powers[1] == xp1.pow(82));
    CHECK(stats.interior_nodes <= 2);
    CHECK(stats.descents <= 2);

    auto bases = brute_force_recover(kb, factors, 82, 1);
    REQUIRE(bases.size() == powers.size());
    for (std::size_t i = 0; i < bases.size(); ++i) CHECK(bases[i].pow(82) == powers[i]);
}

TEST_CASE("dfs single power at the root") {
    PrimeField f37(37);
    KernelBasis kb = basis_of({UniPoly::monomial(f37, 1, 17)}, 17);
    auto powers = dfs_recover(kb, std::vector<UniPoly>{UniPoly::x(f37)}, 17, 1);
    REQUIRE(powers.size() == 1);
    CHECK(powers[0] == UniPoly::monomial(f37, 1, 17));
}

TEST_CASE("univariate reconstruction fast path") {
    PrimeField f(211);
    UniPoly xp3 = UniPoly::from_ints(f, std::vector<i64>{3, 1});
    PowCircuitUni rec = reconstruct_univariate(xp3.pow(20).scaled(5), 1, 20, 1);
    REQUIRE(rec.terms.size() == 1);
    CHECK(rec.terms[0].alpha == 5);
    CHECK(rec.terms[0].base == xp3);
}

TEST_CASE("univariate reconstruction two terms") {
    PrimeField f(331);
    UniPoly x = UniPoly::x(f);
    UniPoly xp1 = x + UniPoly::constant(f, 1);
    UniPoly input = x.pow(82).scaled(2) + xp1.pow(82).scaled(3);
    PowCircuitUni rec = reconstruct_univariate(input, 2, 82, 1);
    REQUIRE(rec.terms.size() == 2);
    CHECK(rec.terms[0].alpha == 2);
    CHECK(rec.terms[0].base == x);
    CHECK(rec.terms[1].alpha == 3);
    CHECK(rec.terms[1].base == xp1);
    CHECK(rec.expand(f) == input);
}

TEST_CASE("univariate reconstruction from an oracle") {
    PrimeField f(331);
    UniPoly x = UniPoly::x(f);
    UniPoly xp2 = x + UniPoly::constant(f, 2);
    UniPoly input = x.pow(82).scaled(9) + xp2.pow(82).scaled(4);
    PowCircuitUni rec = reconstruct_univariate([&](u64 t) { return input.eval(t); }, f, 2, 82, 1);
    REQUIRE(rec.terms.size() == 2);
    CHECK(rec.expand(f) == input);
}

TEST_CASE("univariate regime gate") {
    PrimeField f(331);
    UniPoly x = UniPoly::x(f);
    // d = 82 with r = 3 violates d > (r+1)^4 and is rejected up front.
    CHECK_THROWS_AS(reconstruct_univariate(x.pow(82), 3, 82, 1), error);
    try {
        reconstruct_univariate(x.pow(82), 3, 82, 1);
    } catch (const error& e) {
        CHECK(e.code() == errc::unsupported);
    }
}

TEST_CASE("univariate reconstruction over-asking r discovers the true count") {
    // The input needs one power but the bound allows two... the bound r = 2
    // with d = 257 > 3^4 stays in regime for r = 2 and finds r' = 1.
    PrimeField f(1543);
    UniPoly xp7 = UniPoly::from_ints(f, std::vector<i64>{7, 1});
    PowCircuitUni rec = reconstruct_univariate(xp7.pow(257).scaled(6), 2, 257, 1);
    REQUIRE(rec.terms.size() == 1);
    CHECK(rec.terms[0].alpha == 6);
    CHECK(rec.terms[0].base == xp7);
}

TEST_CASE("three-term reconstruction at d = 257") {
    PrimeField f(1543);
    UniPoly x = UniPoly::x(f);
    UniPoly f1 = x;
    UniPoly f2 = x + UniPoly::constant(f, 1);
    UniPoly f3 = x + UniPoly::constant(f, 2);
    UniPoly input = f1.pow(257).scaled(2) + f2.pow(257).scaled(3) + f3.pow(257).scaled(5);
    PowCircuitUni rec = reconstruct_univariate(input, 3, 257, 1);
    REQUIRE(rec.terms.size() == 3);
    CHECK(rec.terms[0].base == f1);
    CHECK(rec.terms[1].base == f2);
    CHECK(rec.terms[2].base == f3);
    CHECK(rec.expand(f) == input);
}

TEST_CASE("align_by_labels") {
    PrimeField f(101);
    UniPoly x = UniPoly::x(f);
    auto mk_output = [&](std::vector<std::pair<u64, i64>> spec) {
        LabeledUniOutput out;
        out.d = 3;
        for (auto [lambda, c0] : spec)
            out.pairs.emplace_back(lambda, x + UniPoly::constant(f, c0));
        return out;
    };
    std::map<std::size_t, LabeledUniOutput> outputs;
    outputs.emplace(0, mk_output({{2, 1}, {3, 2}}));   // labels 2*1, 3*8=24
    outputs.emplace(1, mk_output({{3, 2}, {2, 1}}));   // same labels, swapped
    auto aligned = align_by_labels(outputs, f);
    CHECK(aligned.at(0).labels(f) == aligned.at(1).labels(f));
    CHECK(aligned.at(0).labels(f)[0] < aligned.at(0).labels(f)[1]);

    // Mismatched label sets are an alignment error.
    std::map<std::size_t, LabeledUniOutput> bad;
    bad.emplace(0, mk_output({{2, 1}, {3, 2}}));
    bad.emplace(1, mk_output({{2, 1}, {4, 2}}));
    CHECK_THROWS_AS(align_by_labels(bad, f), error);

    // Duplicate labels within one projection are rejected.
    std::map<std::size_t, LabeledUniOutput> dup;
    dup.emplace(0, mk_output({{2, 1}, {2, 1}}));
    CHECK_THROWS_AS(align_by_labels(dup, f), error);
}

TEST_CASE("multivariate reconstruction of a single power") {
    // r = 1 keeps the regime bound at d > 16, so d = 17 stays quick.
    PrimeField f(101);
    PowCircuitMulti planted;
    planted.n = 2;
    planted.d = 17;
    planted.terms.push_back({7, SparsePoly::variable(f, 2, 1)});

    MultiOptions options;
    options.fast = true;
    MultiStats stats;
    PowCircuitMulti rec = reconstruct_multivariate(
        [&](std::span<const u64> pt) { return evaluate_circuit(planted, f, pt); }, f, 2, 1, 2, 1, 17,
        options, &stats);
    REQUIRE(rec.terms.size() == 1);
    CHECK(rec.terms[0].lambda == 7);
    CHECK(rec.terms[0].base == planted.terms[0].base);
    CHECK(stats.oracle_calls > 0);

    // Determinism: a second run touches the oracle identically.
    MultiStats again;
    PowCircuitMulti rec2 = reconstruct_multivariate(
        [&](std::span<const u64> pt) { return evaluate_circuit(planted, f, pt); }, f, 2, 1, 2, 1, 17,
        options, &again);
    CHECK(again.oracle_calls == stats.oracle_calls);
    CHECK(rec2.expand(f) == rec.expand(f));
}

TEST_CASE("multivariate zero oracle yields the empty circuit") {
    PrimeField f(101);
    MultiOptions options;
    options.fast = true;
    PowCircuitMulti rec = reconstruct_multivariate(
        [&](std::span<const u64>) { return u64(0); }, f, 2, 1, 2, 1, 17, options, nullptr);
    CHECK(rec.terms.empty());
}

TEST_CASE("multivariate regime gates") {
    PrimeField f(331);
    // p = 331 < r*d*delta*(s^2*n+delta) = 1476: the full profile rejects it.
    CHECK_THROWS_AS(reconstruct_multivariate([&](std::span<const u64>) { return u64(0); }, f, 2, 2,
                                             2, 1, 82, MultiOptions{}, nullptr),
                    error);
    try {
        reconstruct_multivariate([&](std::span<const u64>) { return u64(0); }, f, 2, 2, 2, 1, 82,
                                 MultiOptions{}, nullptr);
    } catch (const error& e) {
        CHECK(e.code() == errc::unsupported);
    }
}

TEST_CASE("normalized line outputs match the planted ratio") {
    // For a projection through u, the recovered pair satisfies
    // h(1)/h(0) = f_i(v)/f_i(u) whenever f_i(u) is nonzero.
    PrimeField f(101);
    SparsePoly base = SparsePoly::variable(f, 2, 1).scaled(3) + SparsePoly::variable(f, 2, 2);
    SplitMix64 rng(91);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<u64> u{1 + rng.below(100), 1 + rng.below(100)};
        std::vector<u64> v{1 + rng.below(100), 1 + rng.below(100)};
        if (base.eval(u) == 0 || u == v) continue;
        UniPoly restricted = base.restrict_to_line(u, v).pow(17).scaled(7);
        PowCircuitUni rec = reconstruct_univariate(restricted, 1, 17, 1);
        REQUIRE(rec.terms.size() == 1);
        const UniPoly& h = rec.terms[0].base;
        REQUIRE(h.coeff(0) != 0);
        u64 h1 = 0;
        for (u64 c : h.coeffs()) h1 = f.add(h1, c);
        CHECK(f.div(h1, h.coeff(0)) == f.div(base.eval(v), base.eval(u)));
    }
}

// Two-power multivariate round trips (d = 82 and above) run in the
// acceptance suite; they are deliberate multi-second computations.
