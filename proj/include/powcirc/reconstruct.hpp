#ifndef POWCIRC_RECONSTRUCT_HPP
#define POWCIRC_RECONSTRUCT_HPP

#include <functional>
#include <map>
#include <span>

#include "powcirc/diffop.hpp"
#include "powcirc/hitting.hpp"
#include "powcirc/ks.hpp"
#include "powcirc/sparsepoly.hpp"

namespace powcirc {

// One univariate power term alpha * base^d with monic base.
struct PowerTermUni {
    u64 alpha = 0;
    UniPoly base;
};

// Sum of d-th powers of pairwise non-associate monic univariate bases,
// terms in canonical order.
struct PowCircuitUni {
    u64 d = 1;
    std::vector<PowerTermUni> terms;

    UniPoly expand(const PrimeField& f) const;
};

// Ground-truth oracle for the DFS: enumerate every multiplicity vector with
// total weighted degree <= delta and keep the g whose d-th power lies in the
// span. Returns the monic bases g in canonical order.
std::vector<UniPoly> brute_force_recover(const KernelBasis& kb, std::span<const UniPoly> factors,
                                         u64 d, u64 delta);

struct DfsStats {
    std::size_t interior_nodes = 0;
    std::size_t descents = 0;
    std::size_t leaves = 0;
};

// Depth-first recovery of the d-th powers spanning the kernel, pruning
// subtrees already covered by recovered outputs. Returns the monic f_i^d in
// canonical order. Throws errc::internal if more than dim(kb)*delta descents
// happen, which cannot occur for in-class inputs.
std::vector<UniPoly> dfs_recover(const KernelBasis& kb, std::span<const UniPoly> factors, u64 d,
                                 u64 delta, DfsStats* stats = nullptr);

// Full univariate reconstruction: perfect-power fast path, annihilating
// operator, factorization of its top coefficient, kernel, DFS, and the final
// coefficient solve. Requires d > (r+1)^4 delta and p > 2 r d delta.
PowCircuitUni reconstruct_univariate(const UniPoly& f, u64 r, u64 d, u64 delta);
PowCircuitUni reconstruct_univariate(const std::function<u64(u64)>& oracle, const PrimeField& field,
                                     u64 r, u64 d, u64 delta);

// Output of one projection: pairs (lambda, monic h); the label of a pair is
// lambda * h(0)^d.
struct LabeledUniOutput {
    u64 d = 1;
    std::vector<std::pair<u64, UniPoly>> pairs;

    std::vector<u64> labels(const PrimeField& f) const;
};

// Reorders every output so position i carries the i-th label in ascending
// canonical order. All outputs must share one multiset of distinct labels.
std::map<std::size_t, LabeledUniOutput> align_by_labels(
    const std::map<std::size_t, LabeledUniOutput>& outputs, const PrimeField& f);

struct PowerTermMulti {
    u64 lambda = 0;
    SparsePoly base;
};

struct PowCircuitMulti {
    std::uint32_t n = 1;
    u64 d = 1;
    std::vector<PowerTermMulti> terms;

    SparsePoly expand(const PrimeField& f) const;
};

struct MultiOptions {
    // The fast profile shrinks the epsilon-driven set sizes below the
    // construction constants so small fields and smoke tests stay feasible;
    // outside it, the full construction parameters are used.
    bool fast = false;
    // Worker count for the pure per-line solver phase. The black box itself
    // is only ever queried sequentially, so the result and the oracle call
    // count do not depend on this.
    unsigned jobs = 1;
    u64 fast_h2_cap = 5000;  // tag-count ceiling for the fast robust set
};

struct MultiStats {
    u64 oracle_calls = 0;
    std::size_t h1_points = 0;
    std::size_t h2_points = 0;
    std::size_t pairs_total = 0;
    std::size_t pairs_failed = 0;
    std::size_t anchor_index = 0;      // H1 index of the chosen anchor
    std::size_t distinct_anchors = 0;  // H1 points after coordinate dedup
    std::size_t good_anchors = 0;      // anchors meeting the |V_u| threshold
    Rat eps_robust{1, 1};
    bool fast_profile = false;
};

// Algorithm: restrict the oracle to lines through anchor points, run the
// univariate reconstruction per line, align outputs by labels at the anchor,
// and decode each base from its normalized values on the robust set.
PowCircuitMulti reconstruct_multivariate(const std::function<u64(std::span<const u64>)>& oracle,
                                         const PrimeField& field, std::uint32_t n, u64 r, u64 s,
                                         u64 delta, u64 d, const MultiOptions& options = {},
                                         MultiStats* stats = nullptr);

}  // namespace powcirc

#endif
