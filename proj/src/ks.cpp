#include "powcirc/ks.hpp"

#include <algorithm>

namespace powcirc {

u64 psi_exponent(const ExponentVector& e, u64 k, u64 q) {
    if (k < 1) fail(errc::parameter, "psi requires k >= 1");
    u64 acc = 0;
    u64 kpow = 1 % q;  // k^(i-1) mod q
    for (std::size_t i = 0; i < e.e.size(); ++i) {
        if (i > 0) kpow = static_cast<u64>(static_cast<u128>(kpow) * (k % q) % q);
        acc += e.e[i] * kpow;
    }
    return acc;
}

UniPoly psi_apply(const SparsePoly& f, u64 k, u64 q) {
    const PrimeField& field = f.field();
    std::vector<u64> coeffs;
    for (const auto& [e, c] : f.terms()) {
        u64 exp = psi_exponent(e, k, q);
        if (coeffs.size() <= exp) coeffs.resize(exp + 1, 0);
        coeffs[exp] = field.add(coeffs[exp], c);
    }
    return UniPoly(field, std::move(coeffs));
}

RobustSet::RobustSet(const PrimeField& field, std::uint32_t n, u64 s, u64 delta, Rat eps, u64 q,
                     u64 lambda, u64 asize)
    : f_(field), n_(n), s_(s), delta_(delta), eps_(eps), q_(q), lambda_(lambda), asize_(asize) {
    if (n < 1 || s < 1 || delta < 1) fail(errc::parameter, "robust set needs n, s, delta >= 1");
    if (!is_prime(q)) fail(errc::parameter, "robust set q must be prime");
    if (asize >= field.p()) fail(errc::parameter, "robust set |A| must fit the field");
}

PointTag RobustSet::tag(std::size_t index) const {
    if (index >= size()) fail(errc::parameter, "robust set point index out of range");
    const std::size_t per_k = asize_;
    const std::size_t per_j = (q_ - 1) * per_k;
    const std::size_t scaled_total = static_cast<std::size_t>(n_) * per_j;
    PointTag t;
    if (index < scaled_total) {
        t.scaled = true;
        t.j = static_cast<std::uint32_t>(index / per_j) + 1;
        std::size_t rem = index % per_j;
        t.k = rem / per_k + 1;
        t.alpha = rem % per_k + 1;
    } else {
        index -= scaled_total;
        t.scaled = false;
        t.j = 0;
        t.k = index / per_k + 1;
        t.alpha = index % per_k + 1;
    }
    return t;
}

std::size_t RobustSet::index_of(const PointTag& t) const {
    const std::size_t per_k = asize_;
    const std::size_t per_j = (q_ - 1) * per_k;
    if (t.k < 1 || t.k > q_ - 1 || t.alpha < 1 || t.alpha > asize_)
        fail(errc::parameter, "tag outside this robust set");
    if (t.scaled) {
        if (t.j < 1 || t.j > n_) fail(errc::parameter, "tag outside this robust set");
        return (t.j - 1) * per_j + (t.k - 1) * per_k + (t.alpha - 1);
    }
    return static_cast<std::size_t>(n_) * per_j + (t.k - 1) * per_k + (t.alpha - 1);
}

std::vector<u64> RobustSet::coords(const PointTag& t) const {
    std::vector<u64> x(n_);
    u64 kpow = 1 % q_;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (i > 0) kpow = static_cast<u64>(static_cast<u128>(kpow) * (t.k % q_) % q_);
        x[i] = f_.pow(t.alpha, kpow);
        if (t.scaled && t.j == i + 1) x[i] = f_.mul(x[i], lambda_);
    }
    return x;
}

u64 choose_robust_q(std::uint32_t n, u64 s, u64 delta, const Rat& eps) {
    if (!eps.positive()) fail(errc::parameter, "robust set eps must be positive");
    const u64 base = 2 * delta * s * s * static_cast<u64>(n) * n;
    // Strict window (base/eps, 2*base/eps).
    u64 q = ceil_div_rat(base, eps);
    if (!gt_div(q, base, eps)) ++q;  // enforce q > base/eps strictly
    for (; lt_div(q, 2 * base, eps); ++q) {
        if (is_prime(q)) return q;
    }
    fail(errc::not_found, "no prime in the robust-set window (" + std::to_string(base) + "/eps, " +
                              std::to_string(2 * base) + "/eps) with eps = " + eps.str());
}

RobustSet build_robust_set(const PrimeField& field, std::uint32_t n, u64 s, u64 delta, Rat eps) {
    const u64 q = choose_robust_q(n, s, delta, eps);
    const u64 asize = ceil_div_rat(2 * static_cast<u64>(n) * delta * q, eps);
    const u64 min_p = std::max(asize + 1, delta * q + 2);
    if (field.p() < min_p)
        fail(errc::unsupported, "field too small for the robust set; need p >= " +
                                    std::to_string(min_p) + ", got p = " + std::to_string(field.p()));
    u64 lambda;
    try {
        lambda = find_high_order_element(field, delta * q).value;
    } catch (const error&) {
        fail(errc::unsupported,
             "field too small for the robust set; need p >= " + std::to_string(min_p));
    }
    return RobustSet(field, n, s, delta, eps, q, lambda, asize);
}

namespace {

struct DecodedMonomial {
    u64 image_exponent;
    u64 coeff;
    ExponentVector exps;
};

}  // namespace

SparsePoly robust_decode(const RobustSet& set,
                         const std::function<std::optional<u64>(std::size_t)>& value_at) {
    const PrimeField& f = set.field();
    const std::uint32_t n = set.nvars();
    const u64 q = set.q();
    const u64 delta = set.degree_bound();
    const u64 threshold = delta * q;  // need strictly more survivors than this
    const std::size_t bound = static_cast<std::size_t>(delta * (q - 1));

    std::vector<u64> lambda_pow(delta + 1);
    lambda_pow[0] = 1;
    for (u64 e = 1; e <= delta; ++e) lambda_pow[e] = f.mul(lambda_pow[e - 1], set.lambda());

    bool reached_readout = false;
    for (u64 k = 1; k <= q - 1; ++k) {
        // Survivor blocks for this k.
        std::vector<std::pair<u64, u64>> plain;
        std::vector<std::vector<std::pair<u64, u64>>> scaled(n);
        PointTag t;
        t.k = k;
        bool thresholds_ok = true;
        for (u64 alpha = 1; alpha <= set.asize(); ++alpha) {
            t.alpha = alpha;
            t.scaled = false;
            t.j = 0;
            if (auto v = value_at(set.index_of(t))) plain.emplace_back(alpha, *v);
            for (std::uint32_t j = 1; j <= n; ++j) {
                t.scaled = true;
                t.j = j;
                if (auto v = value_at(set.index_of(t))) scaled[j - 1].emplace_back(alpha, *v);
            }
        }
        if (plain.size() <= threshold) thresholds_ok = false;
        for (std::uint32_t j = 0; j < n && thresholds_ok; ++j)
            if (scaled[j].size() <= threshold) thresholds_ok = false;
        if (!thresholds_ok) continue;

        // Interpolate the plain and scaled images; any inconsistency means
        // this k does not preserve the structure, so move on.
        UniPoly plain_poly = UniPoly::zero(f);
        std::vector<UniPoly> scaled_poly;
        try {
            plain_poly = interpolate_univariate(f, plain, bound);
            for (std::uint32_t j = 0; j < n; ++j)
                scaled_poly.push_back(interpolate_univariate(f, scaled[j], bound));
        } catch (const error&) {
            continue;
        }

        // Read the support of the plain image.
        std::vector<DecodedMonomial> monomials;
        bool ok = true;
        for (std::size_t e = 0; e < plain_poly.coeffs().size(); ++e) {
            if (plain_poly.coeffs()[e] != 0)
                monomials.push_back({e, plain_poly.coeffs()[e], ExponentVector{}});
        }
        if (monomials.size() > set.sparsity_bound()) continue;
        for (std::uint32_t j = 0; j < n && ok; ++j) {
            // Same support, coefficient ratio a power of lambda.
            std::size_t nonzero = 0;
            for (u64 coeff : scaled_poly[j].coeffs())
                if (coeff != 0) ++nonzero;
            if (nonzero != monomials.size()) { ok = false; break; }
            for (auto& m : monomials) {
                u64 c = scaled_poly[j].coeff(m.image_exponent);
                if (c == 0) { ok = false; break; }
                u64 ratio = f.div(c, m.coeff);
                bool matched = false;
                for (u64 e = 0; e <= delta; ++e) {
                    if (lambda_pow[e] == ratio) {
                        m.exps.e.push_back(static_cast<std::uint32_t>(e));
                        matched = true;
                        break;
                    }
                }
                if (!matched) { ok = false; break; }
            }
        }
        if (!ok) { reached_readout = true; continue; }

        // Self-consistency: total degree, re-encoded exponent, distinctness.
        SparsePoly out(f, n);
        for (const auto& m : monomials) {
            if (m.exps.total_degree() > delta) { ok = false; break; }
            if (psi_exponent(m.exps, k, q) != m.image_exponent) { ok = false; break; }
            out.add_term_raw(m.exps, m.coeff);
        }
        if (!ok || out.sparsity() != monomials.size()) { reached_readout = true; continue; }
        return out;
    }
    if (reached_readout)
        fail(errc::inconsistent_input, "evaluations admit no consistent sparse polynomial");
    fail(errc::decode_failure, "no good decoding k");
}

SparsePoly robust_decode(const RobustSet& set, const std::map<PointTag, u64>& evals) {
    return robust_decode(set, [&](std::size_t index) -> std::optional<u64> {
        auto it = evals.find(set.tag(index));
        if (it == evals.end()) return std::nullopt;
        return it->second;
    });
}

std::string serialize_robust_set(const RobustSet& set) {
    std::string out = "robustset n=" + std::to_string(set.nvars()) + " s=" + std::to_string(set.sparsity_bound()) +
                      " delta=" + std::to_string(set.degree_bound()) + " eps_num=" + std::to_string(set.eps().num) +
                      " eps_den=" + std::to_string(set.eps().den) + " p=" + std::to_string(set.field().p()) +
                      " q=" + std::to_string(set.q()) + " lambda=" + std::to_string(set.lambda()) + "\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        PointTag t = set.tag(i);
        if (t.scaled) {
            out += "scaled j=" + std::to_string(t.j) + " k=" + std::to_string(t.k) +
                   " alpha=" + std::to_string(t.alpha) + "\n";
        } else {
            out += "plain k=" + std::to_string(t.k) + " alpha=" + std::to_string(t.alpha) + "\n";
        }
    }
    return out;
}

}  // namespace powcirc
