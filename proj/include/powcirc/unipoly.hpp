#ifndef POWCIRC_UNIPOLY_HPP
#define POWCIRC_UNIPOLY_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "powcirc/field.hpp"

namespace powcirc {

// Dense univariate polynomial over F_p. Coefficients are canonical residues,
// coeff(i) multiplies x^i, and the representation never carries trailing
// zeros. degree() of the zero polynomial is the sentinel -1.
class UniPoly {
  public:
    explicit UniPoly(const PrimeField& f) : f_(f) {}
    UniPoly(const PrimeField& f, std::vector<u64> coeffs) : f_(f), c_(std::move(coeffs)) { trim(); }

    static UniPoly zero(const PrimeField& f) { return UniPoly(f); }
    static UniPoly constant(const PrimeField& f, i64 c) { return UniPoly(f, {f.reduce(c)}); }
    static UniPoly monomial(const PrimeField& f, i64 c, std::size_t e) {
        std::vector<u64> v(e + 1, 0);
        v[e] = f.reduce(c);
        return UniPoly(f, std::move(v));
    }
    static UniPoly x(const PrimeField& f) { return monomial(f, 1, 1); }
    static UniPoly from_ints(const PrimeField& f, std::span<const i64> coeffs);

    const PrimeField& field() const { return f_; }
    i64 degree() const { return static_cast<i64>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u64 leading_coeff() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<u64>& coeffs() const { return c_; }

    u64 eval(u64 at) const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }

    UniPoly scaled(u64 c) const;
    UniPoly shifted_up(std::size_t e) const;  // multiply by x^e
    UniPoly pow(u64 e) const;
    UniPoly monic() const;  // throws errc::domain on zero
    UniPoly derivative() const;
    UniPoly compose_shift(u64 a) const;  // g(x + a)

    // Euclidean division; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
    // Division that must be exact; throws errc::internal otherwise.
    UniPoly exact_div(const UniPoly& divisor) const;
    bool divisible_by(const UniPoly& divisor) const;

    std::string str() const;  // human-readable, for diagnostics

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    static void check_fields(const UniPoly& a, const UniPoly& b) {
        if (a.f_ != b.f_) fail(errc::parameter, "polynomials over different fields");
    }

    PrimeField f_;
    std::vector<u64> c_;
};

// Inverses of all values (each nonzero) with a single field inversion.
std::vector<u64> batch_inverse(const PrimeField& f, std::span<const u64> values);

// Monic gcd via Euclid; gcd(a, 0) = monic(a); both zero is a domain error.
UniPoly gcd_monic(const UniPoly& a, const UniPoly& b);

// Largest e with phi^e | g (phi non-constant, g nonzero), by repeated
// exact division.
u64 ord_factor(const UniPoly& g, const UniPoly& phi);

// Unique polynomial of degree <= degree_bound through the first
// degree_bound+1 points. Extra points are checked for consistency.
// Abscissae must be pairwise distinct.
UniPoly interpolate_univariate(const PrimeField& f,
                               std::span<const std::pair<u64, u64>> points,
                               std::size_t degree_bound);

// b^e mod m in F_p[x] (m non-constant), exponent up to 128 bits for
// Frobenius towers.
UniPoly powmod_poly(const UniPoly& b, u128 e, const UniPoly& m);

// Canonical order on polynomials: by degree, then lexicographically on the
// coefficient sequence from the constant term up.
int compare_canonical(const UniPoly& a, const UniPoly& b);

}  // namespace powcirc

#endif
