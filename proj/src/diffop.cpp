#include "powcirc/diffop.hpp"

#include <algorithm>

#include "powcirc/linalg.hpp"

namespace powcirc {

UniPoly wronskian(std::span<const UniPoly> gs) {
    if (gs.empty()) fail(errc::parameter, "wronskian of an empty family");
    const PrimeField& f = gs[0].field();
    const std::size_t n = gs.size();
    // Matrix of derivatives, then Bareiss fraction-free elimination.
    std::vector<std::vector<UniPoly>> m;
    m.reserve(n);
    m.emplace_back(gs.begin(), gs.end());
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<UniPoly> row;
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) row.push_back(m[i - 1][j].derivative());
        m.push_back(std::move(row));
    }
    bool negate = false;
    UniPoly prev = UniPoly::constant(f, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return UniPoly::zero(f);
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev);
            }
            m[i][k] = UniPoly::zero(f);
        }
        prev = m[k][k];
    }
    UniPoly det = m[n - 1][n - 1];
    return negate ? -det : det;
}

UniPoly apply_operator(const DiffOperator& L, const UniPoly& g) {
    if (L.coeffs.empty()) fail(errc::parameter, "empty differential operator");
    const PrimeField& f = g.field();
    UniPoly acc = UniPoly::zero(f);
    UniPoly deriv = g;
    for (std::size_t i = 0; i < L.coeffs.size(); ++i) {
        if (i > 0) deriv = deriv.derivative();
        if (!L.coeffs[i].is_zero() && !deriv.is_zero()) acc = acc + L.coeffs[i] * deriv;
    }
    return acc;
}

AnnihilatorResult solve_annihilator(const UniPoly& f, std::size_t r, u64 delta) {
    if (f.is_zero()) fail(errc::domain, "annihilator of the zero polynomial");
    if (r < 1 || delta < 1) fail(errc::parameter, "solve_annihilator needs r, delta >= 1");
    const PrimeField& field = f.field();
    const std::size_t degf = static_cast<std::size_t>(f.degree());

    std::vector<UniPoly> derivs{f};
    for (std::size_t rp = 1; rp <= r; ++rp) {
        derivs.push_back(derivs.back().derivative());
        const std::size_t B = rp * rp * static_cast<std::size_t>(delta);
        const std::size_t ncols = (rp + 1) * (B + 1);
        const std::size_t nrows = degf + B + 1;

        FpMatrix m(field, nrows, ncols);
        for (std::size_t i = 0; i <= rp; ++i) {
            const UniPoly& di = derivs[i];
            for (std::size_t j = 0; j <= B; ++j) {
                const std::size_t col = i * (B + 1) + j;
                for (std::size_t a = 0; a < di.coeffs().size(); ++a) {
                    if (di.coeffs()[a] != 0) m.at(a + j, col) = di.coeffs()[a];
                }
            }
        }
        std::vector<std::vector<u64>> ns = nullspace(m);
        if (ns.empty()) continue;

        // Reorder coordinates so the top block comes first with descending j,
        // then echelonize; the deepest pivot inside the top block yields the
        // solution with minimal deg(Q_rp).
        std::vector<std::size_t> perm(ncols);  // permuted position -> original column
        std::size_t pos = 0;
        for (std::size_t i = rp + 1; i-- > 0;) {
            for (std::size_t j = B + 1; j-- > 0;) perm[pos++] = i * (B + 1) + j;
        }
        std::vector<std::size_t> inv_perm(ncols);
        for (std::size_t c = 0; c < ncols; ++c) inv_perm[perm[c]] = c;
        FpMatrix basis(field, ns.size(), ncols);
        for (std::size_t row = 0; row < ns.size(); ++row) {
            for (std::size_t c = 0; c < ncols; ++c) basis.at(row, c) = ns[row][perm[c]];
        }
        std::vector<std::size_t> pivots = rref(basis);
        std::size_t chosen = pivots.size();
        for (std::size_t row = 0; row < pivots.size(); ++row) {
            if (pivots[row] <= B) chosen = row;  // pivot inside the top block
        }
        if (chosen == pivots.size()) continue;  // only lower-order operators here

        DiffOperator L;
        for (std::size_t i = 0; i <= rp; ++i) {
            std::vector<u64> coeffs(B + 1, 0);
            for (std::size_t j = 0; j <= B; ++j)
                coeffs[j] = basis.at(chosen, inv_perm[i * (B + 1) + j]);
            L.coeffs.emplace_back(field, std::move(coeffs));
        }
        // Normalize: polynomial gcd of the coefficients cleared, top monic.
        UniPoly g = UniPoly::zero(field);
        for (const UniPoly& qi : L.coeffs) {
            if (qi.is_zero()) continue;
            g = g.is_zero() ? qi.monic() : gcd_monic(g, qi);
            if (g.is_one()) break;
        }
        if (!g.is_one()) {
            for (UniPoly& qi : L.coeffs) {
                if (!qi.is_zero()) qi = qi.exact_div(g);
            }
        }
        u64 scale = field.inv(L.top().leading_coeff());
        if (scale != 1) {
            for (UniPoly& qi : L.coeffs) qi = qi.scaled(scale);
        }
        return AnnihilatorResult{rp, std::move(L)};
    }
    fail(errc::not_in_class,
         "no annihilating operator of order <= " + std::to_string(r) + " exists for this input");
}

namespace {

std::vector<UniPoly> kernel_candidates_recurrence(const DiffOperator& L, i64 D) {
    const PrimeField& f = L.coeffs[0].field();
    const std::size_t r = L.order();

    if (static_cast<i64>(r) > D) {
        // No recurrence applies; every coefficient is free.
        std::vector<UniPoly> out;
        for (i64 c = 0; c <= D; ++c) out.push_back(UniPoly::monomial(f, 1, static_cast<std::size_t>(c)));
        return out;
    }

    // Translate so the top coefficient is invertible at 0.
    u64 a = 0;
    while (L.top().eval(a) == 0) {
        ++a;
        if (a >= f.p()) fail(errc::internal, "top coefficient vanished on the whole field");
    }
    std::vector<UniPoly> q_shift;
    q_shift.reserve(L.coeffs.size());
    for (const UniPoly& qi : L.coeffs) q_shift.push_back(qi.compose_shift(a));
    const u64 top0 = q_shift[r].coeff(0);

    // Falling factorials (c)_i for c <= D, i <= r.
    const std::size_t dd = static_cast<std::size_t>(D);
    std::vector<std::vector<u64>> fall(dd + 1, std::vector<u64>(r + 1, 1));
    for (std::size_t c = 0; c <= dd; ++c) {
        for (std::size_t i = 1; i <= r; ++i) {
            fall[c][i] = i > c ? 0 : f.mul(fall[c][i - 1], static_cast<u64>(c - i + 1) % f.p());
        }
    }

    std::vector<u64> lead_inv;
    if (dd >= r) {
        std::vector<u64> leads;
        leads.reserve(dd - r + 1);
        for (std::size_t m = 0; m + r <= dd; ++m) leads.push_back(f.mul(top0, fall[m + r][r]));
        lead_inv = batch_inverse(f, leads);
    }

    std::vector<UniPoly> out;
    for (std::size_t seed = 0; seed < r; ++seed) {
        std::vector<u64> w(dd + 1, 0);
        w[seed] = 1;
        for (std::size_t m = 0; m + r <= dd; ++m) {
            // Coefficient of x^m in A~(g~) involves w[m - b + i]; the (i=r, b=0)
            // term carries w[m + r] with a nonzero multiplier.
            u64 acc = 0;
            for (std::size_t i = 0; i <= r; ++i) {
                const UniPoly& qi = q_shift[i];
                for (std::size_t b = 0; b < qi.coeffs().size(); ++b) {
                    if (qi.coeffs()[b] == 0) continue;
                    if (i == r && b == 0) continue;
                    if (m + i < b) continue;
                    const std::size_t c = m - b + i;
                    if (c > dd || c >= m + r) continue;
                    if (w[c] == 0 || fall[c][i] == 0) continue;
                    acc = f.add(acc, f.mul(qi.coeffs()[b], f.mul(w[c], fall[c][i])));
                }
            }
            w[m + r] = f.mul(f.neg(acc), lead_inv[m]);
        }
        UniPoly g_shift(f, std::move(w));
        out.push_back(g_shift.compose_shift(f.neg(a)));  // undo the translation
    }
    return out;
}

}  // namespace

KernelBasis kernel_basis(const DiffOperator& L, i64 D) {
    if (L.coeffs.empty() || L.top().is_zero()) fail(errc::parameter, "kernel of a degenerate operator");
    if (D < 0) return KernelBasis{{}, D};
    if (static_cast<u64>(D) >= L.coeffs[0].field().p())
        fail(errc::parameter, "kernel_basis requires p > D");

    std::vector<UniPoly> candidates = kernel_candidates_recurrence(L, D);
    // Keep exactly the combinations that the operator annihilates.
    const PrimeField& f = L.coeffs[0].field();
    i64 out_deg = -1;
    std::vector<UniPoly> images;
    images.reserve(candidates.size());
    for (const UniPoly& g : candidates) {
        images.push_back(apply_operator(L, g));
        out_deg = std::max(out_deg, images.back().degree());
    }
    FpMatrix m(f, static_cast<std::size_t>(out_deg + 1), candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (std::size_t row = 0; row < images[c].coeffs().size(); ++row)
            m.at(row, c) = images[c].coeffs()[row];
    }
    std::vector<UniPoly> kernel;
    for (const auto& combo : nullspace(m)) {
        UniPoly g = UniPoly::zero(f);
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (combo[c] != 0) g = g + candidates[c].scaled(combo[c]);
        }
        if (!g.is_zero()) kernel.push_back(std::move(g));
    }
    return KernelBasis{echelon_canonical(kernel, D), D};
}

KernelBasis kernel_basis_dense(const DiffOperator& L, i64 D) {
    if (L.coeffs.empty() || L.top().is_zero()) fail(errc::parameter, "kernel of a degenerate operator");
    if (D < 0) return KernelBasis{{}, D};
    const PrimeField& f = L.coeffs[0].field();
    if (static_cast<u64>(D) >= f.p()) fail(errc::parameter, "kernel_basis requires p > D");

    i64 max_q = 0;
    for (const UniPoly& qi : L.coeffs) max_q = std::max(max_q, qi.degree());
    const std::size_t nrows = static_cast<std::size_t>(D + max_q + 1);
    const std::size_t ncols = static_cast<std::size_t>(D + 1);
    FpMatrix m(f, nrows, ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
        u64 fall = 1;  // (c)_i
        for (std::size_t i = 0; i < L.coeffs.size() && i <= c; ++i) {
            if (i > 0) fall = f.mul(fall, static_cast<u64>(c - i + 1) % f.p());
            if (fall == 0) break;
            const UniPoly& qi = L.coeffs[i];
            for (std::size_t b = 0; b < qi.coeffs().size(); ++b) {
                if (qi.coeffs()[b] == 0) continue;
                m.at(b + c - i, c) = f.add(m.at(b + c - i, c), f.mul(qi.coeffs()[b], fall));
            }
        }
    }
    std::vector<UniPoly> kernel;
    for (const auto& vec : nullspace(m)) kernel.emplace_back(f, vec);
    return KernelBasis{echelon_canonical(kernel, D), D};
}

KernelBasis subspace_with_factor(const KernelBasis& kb, const UniPoly& phi, u64 e) {
    if (phi.degree() < 1) fail(errc::parameter, "subspace_with_factor needs a non-constant phi");
    if (kb.basis.empty()) return KernelBasis{{}, kb.D};
    const PrimeField& f = phi.field();
    if (e == 0) return KernelBasis{echelon_canonical(kb.basis, kb.D), kb.D};
    const u64 phi_deg = static_cast<u64>(phi.degree());
    if (e * phi_deg > static_cast<u64>(kb.D)) return KernelBasis{{}, kb.D};

    const UniPoly phi_e = phi.pow(e);
    const std::size_t a_count = static_cast<std::size_t>(kb.D) - static_cast<std::size_t>(e * phi_deg) + 1;
    const std::size_t k = kb.basis.size();
    const std::size_t nrows = static_cast<std::size_t>(kb.D) + 1;
    FpMatrix m(f, nrows, a_count + k);
    for (std::size_t t = 0; t < a_count; ++t) {
        for (std::size_t b = 0; b < phi_e.coeffs().size(); ++b) {
            if (phi_e.coeffs()[b] != 0) m.at(b + t, t) = f.neg(phi_e.coeffs()[b]);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        const UniPoly& h = kb.basis[i];
        for (std::size_t row = 0; row < h.coeffs().size(); ++row) m.at(row, a_count + i) = h.coeffs()[row];
    }
    std::vector<UniPoly> polys;
    for (const auto& vec : nullspace(m)) {
        UniPoly g = UniPoly::zero(f);
        for (std::size_t i = 0; i < k; ++i) {
            if (vec[a_count + i] != 0) g = g + kb.basis[i].scaled(vec[a_count + i]);
        }
        if (!g.is_zero()) polys.push_back(std::move(g));
    }
    return KernelBasis{echelon_canonical(polys, kb.D), kb.D};
}

std::vector<UniPoly> echelon_canonical(std::span<const UniPoly> polys, i64 D) {
    if (polys.empty()) return {};
    const PrimeField& f = polys[0].field();
    const std::size_t ncols = static_cast<std::size_t>(D) + 1;
    FpMatrix m(f, polys.size(), ncols);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].degree() > D) fail(errc::parameter, "polynomial exceeds the echelon degree bound");
        // Column j holds the coefficient of x^(D-j) so pivots sit on leading exponents.
        for (std::size_t b = 0; b < polys[i].coeffs().size(); ++b)
            m.at(i, ncols - 1 - b) = polys[i].coeffs()[b];
    }
    rref(m);
    std::vector<UniPoly> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<u64> coeffs(ncols, 0);
        bool nonzero = false;
        for (std::size_t j = 0; j < ncols; ++j) {
            coeffs[ncols - 1 - j] = m.at(i, j);
            nonzero = nonzero || m.at(i, j) != 0;
        }
        if (nonzero) out.emplace_back(f, std::move(coeffs));
    }
    return out;
}

bool in_span(std::span<const UniPoly> basis, const UniPoly& g, i64 D) {
    if (g.is_zero()) return true;
    if (g.degree() > D) return false;
    const PrimeField& f = g.field();
    const std::size_t ncols = static_cast<std::size_t>(D) + 1;
    FpMatrix with(f, basis.size() + 1, ncols);
    FpMatrix without(f, basis.size(), ncols);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t b = 0; b < basis[i].coeffs().size(); ++b) {
            with.at(i, b) = basis[i].coeffs()[b];
            without.at(i, b) = basis[i].coeffs()[b];
        }
    }
    for (std::size_t b = 0; b < g.coeffs().size(); ++b) with.at(basis.size(), b) = g.coeffs()[b];
    return rank(std::move(with)) == rank(std::move(without));
}

}  // namespace powcirc
