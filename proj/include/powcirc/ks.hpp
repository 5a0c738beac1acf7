#ifndef POWCIRC_KS_HPP
#define POWCIRC_KS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "powcirc/rational.hpp"
#include "powcirc/sparsepoly.hpp"

namespace powcirc {

// Exponent of the univariate image of x^e under the substitution
// x_i -> y^(k^(i-1) mod q): sum_i e_i * (k^(i-1) mod q).
u64 psi_exponent(const ExponentVector& e, u64 k, u64 q);

// The univariate image of f under the same substitution; colliding
// exponents are summed.
UniPoly psi_apply(const SparsePoly& f, u64 k, u64 q);

// One tagged point of the robust interpolating set. Scaled tags carry the
// coordinate index j (1-based) whose image is multiplied by lambda.
struct PointTag {
    bool scaled = false;
    std::uint32_t j = 0;  // 0 for plain
    u64 k = 0;
    u64 alpha = 0;

    friend bool operator<(const PointTag& a, const PointTag& b) {
        // Scaled block first (j, k, alpha ascending), then the plain block.
        auto key = [](const PointTag& t) {
            return std::tuple<int, std::uint32_t, u64, u64>(t.scaled ? 0 : 1, t.j, t.k, t.alpha);
        };
        return key(a) < key(b);
    }
    friend bool operator==(const PointTag& a, const PointTag& b) {
        return a.scaled == b.scaled && a.j == b.j && a.k == b.k && a.alpha == b.alpha;
    }
};

// Robust interpolating set for n-variate s-sparse polynomials of degree at
// most delta, tolerating an eps fraction of erasures. Coordinates are
// recomputed from tags, never stored.
class RobustSet {
  public:
    RobustSet(const PrimeField& field, std::uint32_t n, u64 s, u64 delta, Rat eps, u64 q, u64 lambda,
              u64 asize);

    const PrimeField& field() const { return f_; }
    std::uint32_t nvars() const { return n_; }
    u64 sparsity_bound() const { return s_; }
    u64 degree_bound() const { return delta_; }
    const Rat& eps() const { return eps_; }
    u64 q() const { return q_; }
    u64 lambda() const { return lambda_; }
    u64 asize() const { return asize_; }

    std::size_t size() const { return (static_cast<std::size_t>(n_) + 1) * (q_ - 1) * asize_; }
    PointTag tag(std::size_t index) const;
    std::size_t index_of(const PointTag& tag) const;
    std::vector<u64> coords(const PointTag& tag) const;

  private:
    PrimeField f_;
    std::uint32_t n_;
    u64 s_, delta_;
    Rat eps_;
    u64 q_, lambda_, asize_;
};

// The prime window of the construction: smallest prime strictly inside
// (2*delta*s^2*n^2/eps, 4*delta*s^2*n^2/eps).
u64 choose_robust_q(std::uint32_t n, u64 s, u64 delta, const Rat& eps);

// Builds the set with q as above, A = the first ceil(2*n*delta*q/eps)
// canonical residues 1, 2, 3, ..., and lambda the smallest element of
// multiplicative order greater than delta*q.
RobustSet build_robust_set(const PrimeField& field, std::uint32_t n, u64 s, u64 delta, Rat eps);

// Decodes the unique s-sparse degree-<=delta polynomial from evaluations on
// the surviving tags. The accessor returns the oracle value for a tag index
// or nullopt for an erased point.
SparsePoly robust_decode(const RobustSet& set,
                         const std::function<std::optional<u64>(std::size_t)>& value_at);
SparsePoly robust_decode(const RobustSet& set, const std::map<PointTag, u64>& evals);

std::string serialize_robust_set(const RobustSet& set);

}  // namespace powcirc

#endif
