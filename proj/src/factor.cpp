#include "powcirc/factor.hpp"

#include <algorithm>
#include <cmath>

#include "powcirc/linalg.hpp"

namespace powcirc {

namespace {

void require_large_char(const UniPoly& g, const char* who) {
    if (static_cast<i64>(g.field().p()) <= g.degree())
        fail(errc::unsupported,
             std::string(who) + " requires p > deg(g); got p = " + std::to_string(g.field().p()) +
                 ", deg = " + std::to_string(g.degree()));
}

void equal_degree_split(const UniPoly& h, std::size_t e, std::vector<UniPoly>& out);

// Guaranteed deterministic split of a monic squarefree product of
// irreducibles of degree e, via the Berlekamp subalgebra: every algebra
// element is constant modulo each irreducible factor, so gcd probes over
// c = 0, 1, ... peel the factors apart.
void berlekamp_split(const UniPoly& h, std::size_t e, std::vector<UniPoly>& out) {
    const PrimeField& f = h.field();
    const std::size_t n = static_cast<std::size_t>(h.degree());
    FpMatrix m(f, n, n);  // column j: coefficients of x^{jp} - x^j mod h
    UniPoly xp = powmod_poly(UniPoly::x(f), f.p(), h);
    UniPoly power = UniPoly::constant(f, 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t row = 0; row < n; ++row) {
            u64 v = power.coeff(row);
            if (row == j) v = f.sub(v, 1);
            m.at(row, j) = v;
        }
        if (j + 1 < n) power = (power * xp).divmod(h).second;
    }
    std::vector<UniPoly> pieces{h};
    for (const auto& vec : nullspace(m)) {
        UniPoly v(f, vec);
        if (v.degree() < 1) continue;
        std::vector<UniPoly> next;
        for (const UniPoly& piece : pieces) {
            if (static_cast<std::size_t>(piece.degree()) == e) {
                next.push_back(piece);
                continue;
            }
            UniPoly remaining = piece;
            for (u64 c = 0; c < f.p() && remaining.degree() >= 1; ++c) {
                UniPoly t = gcd_monic(v - UniPoly::constant(f, static_cast<i64>(c)), remaining);
                if (t.degree() >= 1 && t.degree() < remaining.degree()) {
                    next.push_back(t);
                    remaining = remaining.exact_div(t).monic();
                }
            }
            if (remaining.degree() >= 1) next.push_back(remaining);
        }
        pieces = std::move(next);
    }
    for (const UniPoly& piece : pieces) {
        if (static_cast<std::size_t>(piece.degree()) != e)
            fail(errc::internal, "equal-degree splitting left a composite piece");
        out.push_back(piece.monic());
    }
}

void equal_degree_split(const UniPoly& h_in, std::size_t e, std::vector<UniPoly>& out) {
    UniPoly h = h_in.monic();
    if (static_cast<std::size_t>(h.degree()) == e) {
        out.push_back(h);
        return;
    }
    const PrimeField& f = h.field();
    if (e == 1) {
        // Product of distinct linears. Quadratic-character probes separate
        // any two roots for some shift c, so the canonical scan terminates.
        std::vector<UniPoly> pieces{h};
        const u128 half = (f.p() - 1) / 2;
        for (u64 c = 0;; ++c) {
            bool done = true;
            for (const UniPoly& piece : pieces) done = done && piece.degree() == 1;
            if (done) break;
            if (c >= f.p()) fail(errc::internal, "character scan failed to split linear factors");
            std::vector<UniPoly> next;
            for (const UniPoly& piece : pieces) {
                if (piece.degree() == 1) {
                    next.push_back(piece);
                    continue;
                }
                // A shared root shows up directly in the gcd with the probe.
                UniPoly shift(f, {c, 1});
                UniPoly direct = gcd_monic(shift, piece);
                if (direct.degree() == 1 && piece.degree() > 1) {
                    next.push_back(direct);
                    next.push_back(piece.exact_div(direct));
                    continue;
                }
                UniPoly w = powmod_poly(shift, half, piece);
                UniPoly t = gcd_monic(w - UniPoly::constant(f, 1), piece);
                if (t.degree() >= 1 && t.degree() < piece.degree()) {
                    next.push_back(t);
                    next.push_back(piece.exact_div(t));
                } else {
                    next.push_back(piece);
                }
            }
            pieces = std::move(next);
        }
        for (const UniPoly& piece : pieces) out.push_back(piece);
        return;
    }
    // Quadratic-character probes (x + c)^((p^e - 1)/2) mod h scanned in
    // canonical order, while the exponent fits 128 bits.
    if (static_cast<double>(e) * std::log2(static_cast<double>(f.p())) < 126.0) {
        u128 pe = 1;
        for (std::size_t i = 0; i < e; ++i) pe *= f.p();
        const u128 half = (pe - 1) / 2;
        for (u64 c = 0; c < f.p(); ++c) {
            UniPoly probe = powmod_poly(UniPoly(f, {c, 1}), half, h);
            UniPoly t = gcd_monic(probe - UniPoly::constant(f, 1), h);
            if (t.degree() >= 1 && t.degree() < h.degree()) {
                equal_degree_split(t, e, out);
                equal_degree_split(h.exact_div(t), e, out);
                return;
            }
        }
    }
    berlekamp_split(h, e, out);
}

// Distinct-degree stage on a monic squarefree polynomial.
void distinct_degree_factor(UniPoly g, std::vector<UniPoly>& out) {
    const PrimeField& f = g.field();
    if (g.degree() < 1) return;
    UniPoly frob = powmod_poly(UniPoly::x(f), f.p(), g);  // x^(p^i) mod g
    std::size_t i = 1;
    while (static_cast<i64>(2 * i) <= g.degree()) {
        UniPoly candidate = gcd_monic(frob - UniPoly::x(f), g);
        if (candidate.degree() >= 1) {
            equal_degree_split(candidate, i, out);
            g = g.exact_div(candidate);
            if (g.degree() < 1) return;
            frob = frob.divmod(g).second;
        }
        ++i;
        if (static_cast<i64>(2 * i) <= g.degree()) frob = powmod_poly(frob, f.p(), g);
    }
    if (g.degree() >= 1) out.push_back(g.monic());
}

}  // namespace

UniPoly Factorization::product(const PrimeField& f) const {
    UniPoly acc = UniPoly::constant(f, static_cast<i64>(unit));
    for (const auto& [phi, mult] : factors) acc = acc * phi.pow(mult);
    return acc;
}

std::vector<std::pair<UniPoly, u64>> squarefree_decomposition(const UniPoly& g) {
    if (g.is_zero()) fail(errc::domain, "squarefree decomposition of the zero polynomial");
    require_large_char(g, "squarefree_decomposition");
    std::vector<std::pair<UniPoly, u64>> out;
    if (g.degree() < 1) return out;

    // Yun's algorithm; valid here because p > deg kills no multiplicity.
    UniPoly w = g.monic();
    UniPoly deriv = w.derivative();
    UniPoly u = gcd_monic(w, deriv);
    UniPoly b = w.exact_div(u);
    UniPoly d = deriv.exact_div(u) - b.derivative();
    u64 i = 1;
    while (!b.is_one()) {
        UniPoly part = gcd_monic(b, d);
        if (part.degree() >= 1) out.emplace_back(part, i);
        b = b.exact_div(part);
        if (b.is_one()) break;
        d = d.exact_div(part) - b.derivative();
        ++i;
    }
    return out;
}

Factorization factor_univariate(const UniPoly& g) {
    if (g.is_zero()) fail(errc::domain, "factorization of the zero polynomial");
    require_large_char(g, "factor_univariate");
    Factorization out;
    out.unit = g.leading_coeff();
    if (g.degree() < 1) return out;
    for (const auto& [part, mult] : squarefree_decomposition(g)) {
        std::vector<UniPoly> irreducibles;
        distinct_degree_factor(part, irreducibles);
        for (UniPoly& phi : irreducibles) out.factors.emplace_back(std::move(phi), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        return compare_canonical(a.first, b.first) < 0;
    });
    return out;
}

std::optional<std::pair<u64, UniPoly>> perfect_dth_root(const UniPoly& g, u64 d) {
    if (d < 1) fail(errc::parameter, "perfect_dth_root requires d >= 1");
    if (g.is_zero()) return std::nullopt;
    require_large_char(g, "perfect_dth_root");
    const PrimeField& f = g.field();
    if (d == 1) return std::make_pair(g.leading_coeff(), g.monic());
    if (g.degree() % static_cast<i64>(d) != 0) return std::nullopt;
    if (g.degree() == 0) return std::make_pair(g.coeff(0), UniPoly::constant(f, 1));
    // Cheap necessary condition: a d-th power has squarefree part of degree
    // at most deg(g)/d, and deg(squarefree part) = deg(g) - deg(gcd(g, g')).
    {
        UniPoly common = gcd_monic(g, g.derivative());
        u64 sf_deg = static_cast<u64>(g.degree() - common.degree());
        if (sf_deg * d > static_cast<u64>(g.degree())) return std::nullopt;
    }
    UniPoly root = UniPoly::constant(f, 1);
    for (const auto& [part, mult] : squarefree_decomposition(g)) {
        if (mult % d != 0) return std::nullopt;
        root = root * part.pow(mult / d);
    }
    if (!(root.pow(d).scaled(g.leading_coeff()) == g)) return std::nullopt;
    return std::make_pair(g.leading_coeff(), root);
}

}  // namespace powcirc
