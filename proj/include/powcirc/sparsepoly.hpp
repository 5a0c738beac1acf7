#ifndef POWCIRC_SPARSEPOLY_HPP
#define POWCIRC_SPARSEPOLY_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "powcirc/unipoly.hpp"

namespace powcirc {

// Exponent vector of a monomial in n variables, ordered graded
// lexicographically (total degree first, then lexicographic).
struct ExponentVector {
    std::vector<std::uint32_t> e;

    std::uint64_t total_degree() const {
        std::uint64_t s = 0;
        for (auto v : e) s += v;
        return s;
    }
    bool is_zero() const {
        for (auto v : e)
            if (v != 0) return false;
        return true;
    }
    friend bool operator==(const ExponentVector& a, const ExponentVector& b) { return a.e == b.e; }
    friend bool operator<(const ExponentVector& a, const ExponentVector& b) {
        std::uint64_t da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
};

// n-variate sparse polynomial over F_p: exponent vector -> nonzero
// coefficient, terms kept in graded-lex order.
class SparsePoly {
  public:
    SparsePoly(const PrimeField& f, std::uint32_t n) : f_(f), n_(n) {}

    static SparsePoly zero(const PrimeField& f, std::uint32_t n) { return SparsePoly(f, n); }
    static SparsePoly constant(const PrimeField& f, std::uint32_t n, i64 c);
    static SparsePoly variable(const PrimeField& f, std::uint32_t n, std::uint32_t index);  // 1-based

    const PrimeField& field() const { return f_; }
    std::uint32_t nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t sparsity() const { return terms_.size(); }
    i64 degree() const;  // max total degree; -1 for zero
    const std::map<ExponentVector, u64>& terms() const { return terms_; }

    void add_term(const ExponentVector& e, i64 coeff);
    void add_term_raw(const ExponentVector& e, u64 canonical);

    u64 eval(std::span<const u64> point) const;

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.f_ == b.f_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    SparsePoly scaled(u64 c) const;
    SparsePoly pow(u64 e) const;

    // Leading coefficient w.r.t. the graded-lex term order.
    u64 leading_coeff() const;
    // true when other == c * this for some nonzero scalar c.
    bool is_associate_of(const SparsePoly& other) const;

    // The univariate polynomial t -> f(u + t(v-u)), by expanding each
    // variable image u_i + t(v_i - u_i) and multiplying out per term.
    UniPoly restrict_to_line(std::span<const u64> u, std::span<const u64> v) const;

    std::string str() const;

  private:
    static void check_compat(const SparsePoly& a, const SparsePoly& b);

    PrimeField f_;
    std::uint32_t n_;
    std::map<ExponentVector, u64> terms_;
};

// Total order used to canonicalize term lists of multivariate circuits:
// degree, then sparsity-aware lexicographic comparison of the term maps.
int compare_canonical(const SparsePoly& a, const SparsePoly& b);

}  // namespace powcirc

#endif
