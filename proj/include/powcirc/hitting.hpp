#ifndef POWCIRC_HITTING_HPP
#define POWCIRC_HITTING_HPP

#include <functional>
#include <span>
#include <string>

#include "powcirc/rational.hpp"
#include "powcirc/field.hpp"

namespace powcirc {

// Explicit hitting set for sums of at most r d-th powers of s-sparse
// polynomials of degree at most delta in n variables. Points are the
// substitution images x_i = alpha^(k^(i-1) mod q) for k = 1..t and the
// first m_k nonzero residues alpha, enumerated k-major.
class HittingSetSpec {
  public:
    HittingSetSpec(const PrimeField& field, std::uint32_t n, u64 r, u64 s, u64 d, u64 delta,
                   Rat eps_user, Rat eps_internal, u64 q, u64 t, u64 mk);

    const PrimeField& field() const { return f_; }
    std::uint32_t nvars() const { return n_; }
    u64 r() const { return r_; }
    u64 s() const { return s_; }
    u64 d() const { return d_; }
    u64 delta() const { return delta_; }
    const Rat& eps_user() const { return eps_user_; }
    const Rat& eps_internal() const { return eps_internal_; }
    u64 q() const { return q_; }
    u64 t() const { return t_; }
    u64 mk() const { return mk_; }

    std::size_t size() const { return static_cast<std::size_t>(t_) * mk_; }
    std::vector<u64> point(std::size_t index) const;
    u64 point_k(std::size_t index) const { return index / mk_ + 1; }
    u64 point_alpha(std::size_t index) const { return index % mk_ + 1; }

  private:
    PrimeField f_;
    std::uint32_t n_;
    u64 r_, s_, d_, delta_;
    Rat eps_user_, eps_internal_;
    u64 q_, t_, mk_;
};

// Builds the hitting set: q the smallest prime in
// [r^2 s^2 n + delta + 1, 2 r^2 s^2 n + 2 delta], t = 2 r^2 s^2 n + 2 delta + 1,
// and m_k = ceil(delta * q * d / eps_int) abscissae per k, where eps_int is
// the halved caller budget (the construction proves a (1 - 2 eps_int)
// fraction, so halving delivers the promised (1 - eps)).
// Requires (r-1)^2 <= d+1, p >= r d delta (s^2 n + delta), 0 < eps <= 1/2,
// and p > m_k.
HittingSetSpec build_hitting_set(const PrimeField& field, std::uint32_t n, u64 r, u64 s, u64 d,
                                 u64 delta, Rat eps);

struct PitVerdict {
    bool zero = true;
    std::size_t witness_index = 0;   // valid when !zero
    std::vector<u64> witness_point;  // valid when !zero
    u64 witness_value = 0;           // valid when !zero
};

// Evaluates the oracle over the whole set in canonical order. NonZero
// verdicts carry the first non-vanishing point.
PitVerdict pit_test(const std::function<u64(std::span<const u64>)>& oracle,
                    const HittingSetSpec& hs);

std::string serialize_hitting_set(const HittingSetSpec& hs);

}  // namespace powcirc

#endif
