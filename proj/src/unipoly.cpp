#include "powcirc/unipoly.hpp"

#include <algorithm>

namespace powcirc {

UniPoly UniPoly::from_ints(const PrimeField& f, std::span<const i64> coeffs) {
    std::vector<u64> v(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = f.reduce(coeffs[i]);
    return UniPoly(f, std::move(v));
}

u64 UniPoly::eval(u64 at) const {
    u64 r = 0;
    at %= f_.p();
    for (std::size_t i = c_.size(); i-- > 0;) r = f_.add(f_.mul(r, at), c_[i]);
    return r;
}

UniPoly UniPoly::operator-() const {
    std::vector<u64> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_.neg(c_[i]);
    return UniPoly(f_, std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly::check_fields(a, b);
    std::vector<u64> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.f_.add(a.coeff(i), b.coeff(i));
    return UniPoly(a.f_, std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    UniPoly::check_fields(a, b);
    std::vector<u64> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.f_.sub(a.coeff(i), b.coeff(i));
    return UniPoly(a.f_, std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly::check_fields(a, b);
    if (a.is_zero() || b.is_zero()) return UniPoly::zero(a.f_);
    const u64 p = a.f_.p();
    std::vector<u64> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            u64 t = static_cast<u64>(static_cast<u128>(a.c_[i]) * b.c_[j] % p);
            u64 s = v[i + j] + t;
            v[i + j] = s >= p ? s - p : s;
        }
    }
    return UniPoly(a.f_, std::move(v));
}

UniPoly UniPoly::scaled(u64 c) const {
    c %= f_.p();
    if (c == 0) return zero(f_);
    std::vector<u64> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_.mul(c_[i], c);
    return UniPoly(f_, std::move(v));
}

UniPoly UniPoly::shifted_up(std::size_t e) const {
    if (is_zero()) return *this;
    std::vector<u64> v(c_.size() + e, 0);
    std::copy(c_.begin(), c_.end(), v.begin() + static_cast<std::ptrdiff_t>(e));
    return UniPoly(f_, std::move(v));
}

UniPoly UniPoly::pow(u64 e) const {
    if (degree() == 1 && e >= 4 && e < f_.p()) {
        // (ax + b)^e through the binomial row; e < p keeps the row exact.
        const u64 a = c_[1], b = c_[0];
        std::vector<u64> denom(e);
        for (u64 i = 1; i <= e; ++i) denom[i - 1] = i % f_.p();
        std::vector<u64> inv = batch_inverse(f_, denom);
        std::vector<u64> coeffs(e + 1);
        u64 binom = 1;
        std::vector<u64> apow(e + 1), bpow(e + 1);
        apow[0] = bpow[0] = 1;
        for (u64 i = 1; i <= e; ++i) {
            apow[i] = f_.mul(apow[i - 1], a);
            bpow[i] = f_.mul(bpow[i - 1], b);
        }
        for (u64 i = 0; i <= e; ++i) {
            coeffs[i] = f_.mul(binom, f_.mul(apow[i], bpow[e - i]));
            if (i < e) binom = f_.mul(f_.mul(binom, (e - i) % f_.p()), inv[i]);
        }
        return UniPoly(f_, std::move(coeffs));
    }
    UniPoly r = constant(f_, 1);
    UniPoly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e > 0) b = b * b;
    }
    return r;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) fail(errc::domain, "monic of the zero polynomial");
    if (leading_coeff() == 1) return *this;
    return scaled(f_.inv(leading_coeff()));
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return zero(f_);
    std::vector<u64> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = f_.mul(c_[i], f_.reduce(static_cast<i64>(i % f_.p())));
    return UniPoly(f_, std::move(v));
}

UniPoly UniPoly::compose_shift(u64 a) const {
    // Horner on g(x+a), in place on the ascending coefficient vector.
    a %= f_.p();
    if (a == 0 || is_zero()) return *this;
    std::vector<u64> out;
    out.reserve(c_.size());
    out.push_back(c_.back());
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        out.push_back(out.back());
        for (std::size_t j = out.size() - 2; j >= 1; --j)
            out[j] = f_.add(out[j - 1], f_.mul(a, out[j]));
        out[0] = f_.add(f_.mul(a, out[0]), c_[i]);
    }
    return UniPoly(f_, std::move(out));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    check_fields(*this, divisor);
    if (divisor.is_zero()) fail(errc::domain, "division by the zero polynomial");
    if (degree() < divisor.degree()) return {zero(f_), *this};
    const u64 p = f_.p();
    const u64 lead_inv = f_.inv(divisor.leading_coeff());
    std::vector<u64> rem = c_;
    std::vector<u64> quo(rem.size() - divisor.c_.size() + 1, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        u64 top = rem[k + divisor.c_.size() - 1];
        if (top == 0) continue;
        u64 q = f_.mul(top, lead_inv);
        quo[k] = q;
        for (std::size_t j = 0; j < divisor.c_.size(); ++j) {
            u64 t = static_cast<u64>(static_cast<u128>(q) * divisor.c_[j] % p);
            u64& cell = rem[k + j];
            cell = cell >= t ? cell - t : cell + p - t;
        }
    }
    return {UniPoly(f_, std::move(quo)), UniPoly(f_, std::move(rem))};
}

UniPoly UniPoly::exact_div(const UniPoly& divisor) const {
    auto [q, r] = divmod(divisor);
    if (!r.is_zero()) fail(errc::internal, "division expected to be exact had a remainder");
    return q;
}

bool UniPoly::divisible_by(const UniPoly& divisor) const {
    return divmod(divisor).second.is_zero();
}

std::string UniPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
        if (i > 0) {
            if (c_[i] != 1) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::vector<u64> batch_inverse(const PrimeField& f, std::span<const u64> values) {
    // Montgomery's trick: one inversion plus three multiplications per value.
    std::vector<u64> out(values.size());
    if (values.empty()) return out;
    std::vector<u64> prefix(values.size());
    u64 acc = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        prefix[i] = acc;
        acc = f.mul(acc, values[i]);
    }
    u64 inv_acc = f.inv(acc);  // throws errc::domain if any value is zero
    for (std::size_t i = values.size(); i-- > 0;) {
        out[i] = f.mul(inv_acc, prefix[i]);
        inv_acc = f.mul(inv_acc, values[i]);
    }
    return out;
}

namespace {

// a <- a mod b on raw ascending coefficient buffers (b nonempty, trimmed).
void mod_inplace(const PrimeField& f, std::vector<u64>& a, const std::vector<u64>& b) {
    const u64 p = f.p();
    const u64 lead_inv = f.inv(b.back());
    while (a.size() >= b.size()) {
        u64 top = a.back();
        if (top != 0) {
            const u64 q = f.mul(top, lead_inv);
            const std::size_t off = a.size() - b.size();
            for (std::size_t j = 0; j + 1 < b.size(); ++j) {
                if (b[j] == 0) continue;
                u64 t = static_cast<u64>(static_cast<u128>(q) * b[j] % p);
                u64& cell = a[off + j];
                cell = cell >= t ? cell - t : cell + p - t;
            }
        }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

UniPoly gcd_monic(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) fail(errc::domain, "gcd(0, 0) is undefined");
    const PrimeField& f = a.field();
    std::vector<u64> x = a.coeffs(), y = b.coeffs();
    while (!y.empty()) {
        mod_inplace(f, x, y);
        std::swap(x, y);
    }
    return UniPoly(f, std::move(x)).monic();
}

u64 ord_factor(const UniPoly& g, const UniPoly& phi) {
    if (g.is_zero()) fail(errc::domain, "ord_factor of the zero polynomial");
    if (phi.degree() < 1) fail(errc::domain, "ord_factor with a constant modulus");
    u64 e = 0;
    UniPoly rest = g;
    while (true) {
        auto [q, r] = rest.divmod(phi);
        if (!r.is_zero()) return e;
        rest = q;
        ++e;
    }
}

UniPoly interpolate_univariate(const PrimeField& f,
                               std::span<const std::pair<u64, u64>> points,
                               std::size_t degree_bound) {
    if (points.size() < degree_bound + 1)
        fail(errc::parameter, "interpolation needs degree_bound+1 points");
    if (f.p() <= degree_bound)
        fail(errc::parameter, "interpolation degree bound must be below the characteristic");
    {
        std::vector<u64> xs;
        xs.reserve(points.size());
        for (const auto& pt : points) xs.push_back(pt.first % f.p());
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
            fail(errc::parameter, "interpolation abscissae must be pairwise distinct");
    }

    // Newton form on the first degree_bound+1 points. All level denominators
    // are known up front, so one batched inversion covers the whole table;
    // equally spaced abscissae (the common case along lines) need only one
    // inverse per level.
    const std::size_t m = degree_bound + 1;
    std::vector<u64> xs(m), dd(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = points[i].first % f.p();
        dd[i] = points[i].second % f.p();
    }
    bool equal_spacing = m >= 2;
    const u64 step = m >= 2 ? f.sub(xs[1], xs[0]) : 0;
    for (std::size_t i = 2; i < m && equal_spacing; ++i)
        equal_spacing = f.sub(xs[i], xs[i - 1]) == step;

    std::vector<u64> inv_dens;
    if (equal_spacing && m >= 2) {
        std::vector<u64> dens(m - 1);
        for (std::size_t level = 1; level < m; ++level)
            dens[level - 1] = f.mul(step, level % f.p());
        inv_dens = batch_inverse(f, dens);
    } else if (m >= 2) {
        std::vector<u64> dens;
        dens.reserve(m * (m - 1) / 2);
        for (std::size_t level = 1; level < m; ++level) {
            for (std::size_t i = level; i < m; ++i) dens.push_back(f.sub(xs[i], xs[i - level]));
        }
        inv_dens = batch_inverse(f, dens);
    }
    std::size_t cursor = 0;
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = m - 1; i >= level; --i) {
            u64 num = f.sub(dd[i], dd[i - 1]);
            u64 inv = equal_spacing ? inv_dens[level - 1] : inv_dens[cursor + (i - level)];
            dd[i] = f.mul(num, inv);
            if (i == level) break;
        }
        cursor += m - level;
    }
    // Horner over the Newton basis, in place on the ascending coefficient
    // vector: c <- c*(x - xs[i]) + dd[i].
    std::vector<u64> coeffs;
    coeffs.reserve(m);
    coeffs.push_back(dd[m - 1]);
    for (std::size_t i = m - 1; i-- > 0;) {
        coeffs.push_back(coeffs.back());
        for (std::size_t j = coeffs.size() - 2; j >= 1; --j)
            coeffs[j] = f.sub(coeffs[j - 1], f.mul(xs[i], coeffs[j]));
        coeffs[0] = f.add(f.neg(f.mul(xs[i], coeffs[0])), dd[i]);
    }
    UniPoly result(f, std::move(coeffs));

    for (std::size_t i = m; i < points.size(); ++i) {
        if (result.eval(points[i].first) != points[i].second % f.p())
            fail(errc::inconsistent_points, "extra interpolation point disagrees with the degree bound");
    }
    return result;
}

UniPoly powmod_poly(const UniPoly& b, u128 e, const UniPoly& m) {
    if (m.degree() < 1) fail(errc::domain, "powmod_poly with a constant modulus");
    UniPoly base = b.divmod(m).second;
    UniPoly r = UniPoly::constant(b.field(), 1);
    while (e > 0) {
        if (e & 1) r = (r * base).divmod(m).second;
        e >>= 1;
        if (e > 0) base = (base * base).divmod(m).second;
    }
    return r;
}

int compare_canonical(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace powcirc
