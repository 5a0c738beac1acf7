#include <doctest.h>

#include "powcirc/ks.hpp"
#include "testutil.hpp"

using namespace powcirc;

namespace {

ExponentVector ev(std::initializer_list<std::uint32_t> vals) {
    ExponentVector e;
    e.e = vals;
    return e;
}

std::map<PointTag, u64> full_evals(const RobustSet& set, const SparsePoly& f) {
    std::map<PointTag, u64> out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        PointTag t = set.tag(i);
        out.emplace(t, f.eval(set.coords(t)));
    }
    return out;
}

}  // namespace

TEST_CASE("psi_exponent examples") {
    CHECK(psi_exponent(ev({0, 0, 1}), 2, 5) == 4);
    CHECK(psi_exponent(ev({1, 0, 1}), 2, 5) == 5);
    CHECK(psi_exponent(ev({0, 0, 0}), 2, 5) == 0);
    // Degree bound: psi exponent <= (q-1) * total degree.
    PrimeField f(101);
    SplitMix64 rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        ExponentVector e;
        e.e = {static_cast<std::uint32_t>(rng.below(4)), static_cast<std::uint32_t>(rng.below(4)),
               static_cast<std::uint32_t>(rng.below(4))};
        u64 q = 7;
        for (u64 k = 1; k < q; ++k) CHECK(psi_exponent(e, k, q) <= (q - 1) * e.total_degree());
    }
}

TEST_CASE("psi_apply examples") {
    PrimeField f(31);
    SparsePoly sum = SparsePoly::variable(f, 2, 1) + SparsePoly::variable(f, 2, 2);
    CHECK(psi_apply(sum, 2, 5) == UniPoly::from_ints(f, std::vector<i64>{0, 1, 1}));
    CHECK(psi_apply(SparsePoly::zero(f, 2), 2, 5).is_zero());
    SparsePoly diff = SparsePoly::variable(f, 2, 1) - SparsePoly::variable(f, 2, 2);
    CHECK(psi_apply(diff, 1, 5).is_zero());  // engineered collision at k = 1
}

TEST_CASE("psi preserves evaluation through the point map") {
    PrimeField f(151);
    SplitMix64 rng(53);
    RobustSet set = build_robust_set(f, 2, 2, 1, Rat(1, 1));
    for (int trial = 0; trial < 10; ++trial) {
        SparsePoly g = testutil::random_sparse(rng, f, 2, 2, 1);
        for (u64 k = 1; k < set.q(); k += 3) {
            UniPoly image = psi_apply(g, k, set.q());
            for (u64 alpha = 1; alpha <= 5; ++alpha) {
                PointTag t;
                t.k = k;
                t.alpha = alpha;
                CHECK(g.eval(set.coords(t)) == image.eval(alpha));
            }
        }
    }
}

TEST_CASE("monomial count preservation rate") {
    // The number of k with a collapsed image is at most C(s,2)*(n-1).
    PrimeField f(1009);
    SplitMix64 rng(59);
    u64 q = 13;  // q > max(delta, C(s,2)n) + 1 for s = 2, n = 3, delta = 2
    for (int trial = 0; trial < 30; ++trial) {
        SparsePoly g = testutil::random_sparse(rng, f, 3, 2, 2);
        u64 bad = 0;
        for (u64 k = 1; k <= q - 1; ++k) {
            UniPoly image = psi_apply(g, k, q);
            std::size_t monomials = 0;
            for (u64 c : image.coeffs()) monomials += c != 0;
            if (monomials < g.sparsity()) ++bad;
        }
        u64 s = g.sparsity();
        CHECK(bad <= (s * (s - 1) / 2) * (3 - 1));
    }
}

TEST_CASE("pairwise independence is usually preserved") {
    // For non-associate sparse f, g at most s(s-1)(n-1) values of k make the
    // univariate images linearly dependent.
    PrimeField f(1009);
    SplitMix64 rng(57);
    const u64 q = 13;
    const std::uint32_t n = 3;
    for (int trial = 0; trial < 20; ++trial) {
        SparsePoly a = testutil::random_sparse(rng, f, n, 2, 2);
        SparsePoly b = testutil::random_sparse(rng, f, n, 2, 2);
        if (a.is_zero() || b.is_zero() || a.is_associate_of(b)) continue;
        u64 s = std::max(a.sparsity(), b.sparsity());
        u64 dependent = 0;
        for (u64 k = 1; k <= q - 1; ++k) {
            std::vector<UniPoly> images{psi_apply(a, k, q), psi_apply(b, k, q)};
            if (images[0].is_zero() || images[1].is_zero() ||
                testutil::linearly_dependent(images))
                ++dependent;
        }
        CHECK(dependent <= s * (s - 1) * (n - 1));
    }
}

TEST_CASE("build_robust_set parameter examples") {
    PrimeField f(101);
    RobustSet set = build_robust_set(f, 1, 1, 1, Rat(1, 2));
    CHECK(set.q() == 5);
    CHECK(set.asize() == 20);
    CHECK(set.size() == 160);
    CHECK(element_order(f, set.lambda()) > set.q() * 1);

    // q selection alone for a configuration whose set is far too large to build.
    CHECK(choose_robust_q(2, 2, 1, Rat(1, 100)) == 3203);

    // Too-small fields are rejected with the minimum requirement.
    PrimeField tiny(13);
    CHECK_THROWS_AS(build_robust_set(tiny, 1, 1, 1, Rat(1, 2)), error);
}

TEST_CASE("robust set tags and serialization shape") {
    PrimeField f(101);
    RobustSet set = build_robust_set(f, 2, 1, 1, Rat(2, 1));
    CHECK(set.size() == (2 + 1) * (set.q() - 1) * set.asize());
    // tag/index round-trip and block order: scaled first, then plain.
    for (std::size_t i = 0; i < set.size(); ++i) {
        CHECK(set.index_of(set.tag(i)) == i);
        if (i + 1 < set.size()) CHECK(set.tag(i) < set.tag(i + 1));
    }
    std::string text = serialize_robust_set(set);
    CHECK(text.rfind("robustset n=2 s=1 delta=1 eps_num=2 eps_den=1 p=101", 0) == 0);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == set.size() + 1);
}

TEST_CASE("robust decode with no erasures") {
    PrimeField f(541);
    RobustSet set = build_robust_set(f, 2, 2, 2, Rat(1, 1));
    SparsePoly g(f, 2);
    g.add_term(ev({2, 0}), 3);
    g.add_term(ev({0, 1}), 5);
    CHECK(robust_decode(set, full_evals(set, g)) == g);

    CHECK(robust_decode(set, full_evals(set, SparsePoly::zero(f, 2))).is_zero());
}

TEST_CASE("robust decode under adversarial erasures") {
    PrimeField f(349);
    RobustSet set = build_robust_set(f, 2, 1, 3, Rat(1, 1));
    SparsePoly g(f, 2);
    g.add_term(ev({2, 1}), 3);  // 3*x1^2*x2, the worked example shape
    std::map<PointTag, u64> evals = full_evals(set, g);

    // Erase the leading k-blocks wholesale: a quarter of the set.
    std::vector<bool> erased(set.size(), false);
    std::size_t count = set.size() / 4;
    for (std::size_t i = 0; i < set.size() && count > 0; ++i) {
        PointTag t = set.tag(i);
        if (t.k <= 2) {
            erased[i] = true;
            --count;
        }
    }
    auto view = [&](std::size_t idx) -> std::optional<u64> {
        if (erased[idx]) return std::nullopt;
        return evals.find(set.tag(idx))->second;
    };
    CHECK(robust_decode(set, view) == g);
}

TEST_CASE("decode failure when every point is erased") {
    PrimeField f(101);
    RobustSet set = build_robust_set(f, 1, 1, 1, Rat(1, 2));
    try {
        robust_decode(set, [](std::size_t) { return std::optional<u64>{}; });
        FAIL("expected decode failure");
    } catch (const error& e) {
        CHECK(e.code() == errc::decode_failure);
    }
}

TEST_CASE("hitting rate over the robust set") {
    // Nonzero 2s-sparse degree-delta polynomials vanish on at most an
    // (eps/n) fraction of the tagged points.
    PrimeField f(607);
    RobustSet set = build_robust_set(f, 2, 1, 2, Rat(1, 2));
    SplitMix64 rng(61);
    for (int trial = 0; trial < 6; ++trial) {
        SparsePoly g = testutil::random_sparse(rng, f, 2, 2, 2);
        if (g.is_zero()) continue;
        u64 zeros = 0;
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (g.eval(set.coords(set.tag(i))) == 0) ++zeros;
        }
        // zeros <= (eps/n)|S|, exactly: zeros * n * den <= num * |S|.
        CHECK(zeros * set.nvars() * static_cast<u64>(set.eps().den) <=
              static_cast<u64>(set.eps().num) * set.size());
    }
}
