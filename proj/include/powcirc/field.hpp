#ifndef POWCIRC_FIELD_HPP
#define POWCIRC_FIELD_HPP

#include <cstdint>
#include <vector>

#include "powcirc/errors.hpp"

namespace powcirc {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Deterministic primality for m < 2^62 (Miller-Rabin with a witness set
// proven complete for the 64-bit range).
bool is_prime(u64 m);

// Smallest prime q with lo <= q <= hi. Throws errc::not_found if none.
u64 find_prime_in_range(u64 lo, u64 hi);

// Prime field F_p with canonical residues in [0, p). The modulus is verified
// prime at construction and bounded by 2^62 so products fit in 128 bits.
class PrimeField {
  public:
    explicit PrimeField(u64 p);

    u64 p() const { return p_; }

    u64 reduce(i64 v) const {
        i64 r = v % static_cast<i64>(p_);
        return r < 0 ? static_cast<u64>(r + static_cast<i64>(p_)) : static_cast<u64>(r);
    }
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p_ ? s - p_ : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p_); }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;  // throws errc::domain on a == 0
    u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.p_ != b.p_; }

  private:
    u64 p_;
};

// A canonical residue paired with its field. Mixing moduli is rejected.
struct FpElem {
    u64 value = 0;
    u64 p = 0;

    FpElem() = default;
    FpElem(const PrimeField& f, i64 v) : value(f.reduce(v)), p(f.p()) {}

    PrimeField field() const { return PrimeField(p); }

    friend FpElem operator+(const FpElem& a, const FpElem& b) {
        check(a, b);
        return raw(a.field().add(a.value, b.value), a.p);
    }
    friend FpElem operator-(const FpElem& a, const FpElem& b) {
        check(a, b);
        return raw(a.field().sub(a.value, b.value), a.p);
    }
    friend FpElem operator*(const FpElem& a, const FpElem& b) {
        check(a, b);
        return raw(a.field().mul(a.value, b.value), a.p);
    }
    friend FpElem operator/(const FpElem& a, const FpElem& b) {
        check(a, b);
        return raw(a.field().div(a.value, b.value), a.p);
    }
    friend bool operator==(const FpElem& a, const FpElem& b) { return a.value == b.value && a.p == b.p; }

    static FpElem raw(u64 canonical, u64 p) {
        FpElem e;
        e.value = canonical;
        e.p = p;
        return e;
    }

  private:
    static void check(const FpElem& a, const FpElem& b) {
        if (a.p != b.p) fail(errc::parameter, "arithmetic between elements of different prime fields");
    }
};

// Multiplicative order of a (nonzero) in F_p, by factoring p-1 with trial
// division and stripping prime factors from the exponent.
u64 element_order(const PrimeField& f, u64 a);
inline u64 element_order(const FpElem& a) { return element_order(a.field(), a.value); }

// Smallest residue a >= 2 whose order exceeds min_order. Throws
// errc::infeasible when min_order >= p-1 (the group cannot contain one).
FpElem find_high_order_element(const PrimeField& field, u64 min_order);

// Prime factorization of m by trial division (used for orders; m < 2^62).
std::vector<u64> prime_factors(u64 m);

}  // namespace powcirc

#endif
