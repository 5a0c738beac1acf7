#ifndef POWCIRC_TESTUTIL_HPP
#define POWCIRC_TESTUTIL_HPP

#include <vector>

#include "powcirc/rng.hpp"
#include "powcirc/sparsepoly.hpp"
#include "powcirc/unipoly.hpp"

namespace powcirc::testutil {

inline UniPoly random_unipoly(SplitMix64& rng, const PrimeField& f, std::size_t max_deg) {
    std::size_t deg = rng.below(max_deg + 1);
    std::vector<u64> c(deg + 1);
    for (auto& v : c) v = rng.below(f.p());
    if (c.back() == 0) c.back() = 1 + rng.below(f.p() - 1);
    return UniPoly(f, std::move(c));
}

inline UniPoly random_monic(SplitMix64& rng, const PrimeField& f, std::size_t deg) {
    std::vector<u64> c(deg + 1);
    for (std::size_t i = 0; i < deg; ++i) c[i] = rng.below(f.p());
    c[deg] = 1;
    return UniPoly(f, std::move(c));
}

// Random n-variate polynomial with at most s terms and degree at most delta.
inline SparsePoly random_sparse(SplitMix64& rng, const PrimeField& f, std::uint32_t n, u64 s,
                                u64 delta) {
    SparsePoly out(f, n);
    for (u64 t = 0; t < s; ++t) {
        ExponentVector e;
        e.e.assign(n, 0);
        u64 budget = delta;
        for (std::uint32_t i = 0; i < n; ++i) {
            u64 exp = rng.below(budget + 1);
            e.e[i] = static_cast<std::uint32_t>(exp);
            budget -= exp;
        }
        out.add_term(e, static_cast<i64>(1 + rng.below(f.p() - 1)));
    }
    return out;
}

// Dependence of a polynomial family decided by coefficient-matrix rank.
inline bool linearly_dependent(const std::vector<UniPoly>& gs) {
    if (gs.empty()) return false;
    i64 max_deg = 0;
    for (const auto& g : gs) max_deg = std::max(max_deg, g.degree());
    const PrimeField& f = gs[0].field();
    std::size_t cols = static_cast<std::size_t>(max_deg) + 1;
    // Rank via homemade elimination to stay independent of linalg.hpp.
    std::vector<std::vector<u64>> rows;
    for (const auto& g : gs) {
        std::vector<u64> row(cols, 0);
        for (std::size_t i = 0; i < g.coeffs().size(); ++i) row[i] = g.coeffs()[i];
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        u64 inv = f.inv(rows[rank][col]);
        for (std::size_t j = col; j < cols; ++j) rows[rank][j] = f.mul(rows[rank][j], inv);
        for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
            if (r2 == rank || rows[r2][col] == 0) continue;
            u64 factor = rows[r2][col];
            for (std::size_t j = col; j < cols; ++j)
                rows[r2][j] = f.sub(rows[r2][j], f.mul(factor, rows[rank][j]));
        }
        ++rank;
    }
    return rank < gs.size();
}

}  // namespace powcirc::testutil

#endif
