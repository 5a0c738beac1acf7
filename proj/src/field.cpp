#include "powcirc/field.hpp"

#include <algorithm>

namespace powcirc {

namespace {

constexpr u64 kModulusLimit = u64(1) << 62;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(u64 m) {
    if (m < 2) fail(errc::parameter, "is_prime requires m >= 2");
    if (m >= kModulusLimit) fail(errc::parameter, "is_prime requires m < 2^62");
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (m == q) return true;
        if (m % q == 0) return false;
    }
    // Witness set proven complete for n < 3.3 * 10^24, so in particular for 2^62.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin(m, a)) return false;
    }
    return true;
}

u64 find_prime_in_range(u64 lo, u64 hi) {
    if (lo < 2 || lo > hi) fail(errc::parameter, "find_prime_in_range requires 2 <= lo <= hi");
    for (u64 q = lo; q <= hi; ++q) {
        if (is_prime(q)) return q;
    }
    fail(errc::not_found, "no prime in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p < 3) fail(errc::parameter, "prime field modulus must be >= 3");
    if (p >= kModulusLimit) fail(errc::parameter, "prime field modulus must be < 2^62");
    if (!is_prime(p)) fail(errc::parameter, std::to_string(p) + " is not prime");
}

u64 PrimeField::pow(u64 a, u64 e) const { return powmod(a % p_, e, p_); }

u64 PrimeField::inv(u64 a) const {
    a %= p_;
    if (a == 0) fail(errc::domain, "inverse of zero");
    // Extended Euclid on (a, p).
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(p_), new_r = static_cast<i64>(a);
    while (new_r != 0) {
        i64 q = r / new_r;
        i64 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(p_)) : static_cast<u64>(t);
}

std::vector<u64> prime_factors(u64 m) {
    std::vector<u64> out;
    for (u64 d = 2; static_cast<u128>(d) * d <= m; d == 2 ? d = 3 : d += 2) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

u64 element_order(const PrimeField& f, u64 a) {
    a %= f.p();
    if (a == 0) fail(errc::domain, "order of zero is undefined");
    u64 order = f.p() - 1;
    for (u64 q : prime_factors(f.p() - 1)) {
        while (order % q == 0 && f.pow(a, order / q) == 1) order /= q;
    }
    return order;
}

FpElem find_high_order_element(const PrimeField& field, u64 min_order) {
    if (min_order >= field.p() - 1) {
        fail(errc::infeasible, "no element of order > " + std::to_string(min_order) + " in F_" +
                                   std::to_string(field.p()) + " (group order " +
                                   std::to_string(field.p() - 1) + ")");
    }
    for (u64 a = 2; a < field.p(); ++a) {
        if (element_order(field, a) > min_order) return FpElem::raw(a, field.p());
    }
    fail(errc::internal, "high-order element scan exhausted the field");
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::parameter: return "parameter";
        case errc::domain: return "domain";
        case errc::not_found: return "not-found";
        case errc::infeasible: return "infeasible";
        case errc::unsupported: return "unsupported-parameters";
        case errc::dimension_mismatch: return "dimension-mismatch";
        case errc::inconsistent_points: return "inconsistent-points";
        case errc::decode_failure: return "decode-failure";
        case errc::inconsistent_input: return "inconsistent-input";
        case errc::not_in_class: return "not-in-class";
        case errc::alignment: return "alignment";
        case errc::reconstruction_failure: return "reconstruction-failure";
        case errc::parse: return "parse";
        case errc::circuit_zero_coeff: return "zero-coefficient";
        case errc::circuit_degree_bound: return "degree-bound";
        case errc::circuit_sparsity_bound: return "sparsity-bound";
        case errc::circuit_terms_bound: return "terms-bound";
        case errc::circuit_associate_bases: return "associate-bases";
        case errc::internal: return "internal-invariant";
        case errc::io: return "io";
    }
    return "unknown";
}

}  // namespace powcirc
