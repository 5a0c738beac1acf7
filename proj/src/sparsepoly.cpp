#include "powcirc/sparsepoly.hpp"

namespace powcirc {

SparsePoly SparsePoly::constant(const PrimeField& f, std::uint32_t n, i64 c) {
    SparsePoly out(f, n);
    ExponentVector e;
    e.e.assign(n, 0);
    out.add_term(e, c);
    return out;
}

SparsePoly SparsePoly::variable(const PrimeField& f, std::uint32_t n, std::uint32_t index) {
    if (index < 1 || index > n) fail(errc::parameter, "variable index out of range");
    SparsePoly out(f, n);
    ExponentVector e;
    e.e.assign(n, 0);
    e.e[index - 1] = 1;
    out.add_term(e, 1);
    return out;
}

i64 SparsePoly::degree() const {
    i64 d = -1;
    for (const auto& [e, c] : terms_) d = std::max<i64>(d, static_cast<i64>(e.total_degree()));
    return d;
}

void SparsePoly::add_term(const ExponentVector& e, i64 coeff) { add_term_raw(e, f_.reduce(coeff)); }

void SparsePoly::add_term_raw(const ExponentVector& e, u64 canonical) {
    if (e.e.size() != n_) fail(errc::dimension_mismatch, "exponent vector length differs from n");
    if (canonical == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, canonical);
    } else {
        it->second = f_.add(it->second, canonical);
        if (it->second == 0) terms_.erase(it);
    }
}

u64 SparsePoly::eval(std::span<const u64> point) const {
    if (point.size() != n_) fail(errc::dimension_mismatch, "evaluation point length differs from n");
    u64 acc = 0;
    for (const auto& [e, c] : terms_) {
        u64 t = c;
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (e.e[i] == 0) continue;
            u64 x = point[i] % f_.p();
            t = e.e[i] == 1 ? f_.mul(t, x) : f_.mul(t, f_.pow(x, e.e[i]));
        }
        acc = f_.add(acc, t);
    }
    return acc;
}

void SparsePoly::check_compat(const SparsePoly& a, const SparsePoly& b) {
    if (a.f_ != b.f_) fail(errc::parameter, "sparse polynomials over different fields");
    if (a.n_ != b.n_) fail(errc::dimension_mismatch, "sparse polynomials with different variable counts");
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly::check_compat(a, b);
    SparsePoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term_raw(e, c);
    return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly::check_compat(a, b);
    SparsePoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term_raw(e, a.f_.neg(c));
    return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly::check_compat(a, b);
    SparsePoly out(a.f_, a.n_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            ExponentVector e;
            e.e.resize(a.n_);
            for (std::uint32_t i = 0; i < a.n_; ++i) e.e[i] = ea.e[i] + eb.e[i];
            out.add_term_raw(e, a.f_.mul(ca, cb));
        }
    }
    return out;
}

SparsePoly SparsePoly::scaled(u64 c) const {
    c %= f_.p();
    SparsePoly out(f_, n_);
    if (c == 0) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, f_.mul(v, c));
    return out;
}

SparsePoly SparsePoly::pow(u64 e) const {
    SparsePoly r = constant(f_, n_, 1);
    SparsePoly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e > 0) b = b * b;
    }
    return r;
}

u64 SparsePoly::leading_coeff() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

bool SparsePoly::is_associate_of(const SparsePoly& other) const {
    if (f_ != other.f_ || n_ != other.n_) return false;
    if (is_zero() || other.is_zero()) return false;
    if (sparsity() != other.sparsity()) return false;
    // Cross-scaling: other * lc(this) == this * lc(other) termwise.
    u64 la = leading_coeff(), lb = other.leading_coeff();
    auto ia = terms_.begin();
    auto ib = other.terms_.begin();
    for (; ia != terms_.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first)) return false;
        if (f_.mul(ia->second, lb) != f_.mul(ib->second, la)) return false;
    }
    return true;
}

UniPoly SparsePoly::restrict_to_line(std::span<const u64> u, std::span<const u64> v) const {
    if (u.size() != n_ || v.size() != n_)
        fail(errc::dimension_mismatch, "line endpoints must have n coordinates");
    std::vector<UniPoly> image;
    image.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        u64 a = u[i] % f_.p();
        u64 b = f_.sub(v[i] % f_.p(), a);
        image.push_back(UniPoly(f_, {a, b}));  // u_i + t(v_i - u_i)
    }
    UniPoly acc = UniPoly::zero(f_);
    for (const auto& [e, c] : terms_) {
        UniPoly term = UniPoly::constant(f_, static_cast<i64>(c));
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (e.e[i] != 0) term = term * image[i].pow(e.e[i]);
        }
        acc = acc + term;
    }
    return acc;
}

std::string SparsePoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += "+";
        s += std::to_string(c);
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (e.e[i] == 0) continue;
            s += "*x" + std::to_string(i + 1);
            if (e.e[i] > 1) s += "^" + std::to_string(e.e[i]);
        }
    }
    return s;
}

int compare_canonical(const SparsePoly& a, const SparsePoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first < ib->first) return -1;
        if (ib->first < ia->first) return 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia == a.terms().end() && ib == b.terms().end()) return 0;
    return ia == a.terms().end() ? -1 : 1;
}

}  // namespace powcirc
