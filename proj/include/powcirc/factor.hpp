#ifndef POWCIRC_FACTOR_HPP
#define POWCIRC_FACTOR_HPP

#include <optional>
#include <vector>

#include "powcirc/unipoly.hpp"

namespace powcirc {

// Complete factorization into monic irreducibles with multiplicities,
// sorted canonically (degree, then coefficient sequence).
struct Factorization {
    u64 unit = 1;  // leading coefficient of the input
    std::vector<std::pair<UniPoly, u64>> factors;

    UniPoly product(const PrimeField& f) const;
};

// Yun's squarefree decomposition. Requires p > deg(g); returns pairwise
// coprime squarefree parts with ascending multiplicities whose weighted
// product is monic(g). A constant input yields an empty list.
std::vector<std::pair<UniPoly, u64>> squarefree_decomposition(const UniPoly& g);

// Deterministic complete factorization over F_p: squarefree decomposition,
// distinct-degree splitting via Frobenius powers, then equal-degree
// splitting by scanning field elements in canonical order. Runs in
// poly(p, deg); requires p > deg(g).
Factorization factor_univariate(const UniPoly& g);

// If g = alpha * h^d for a monic h, returns (alpha, h); otherwise nullopt.
// Decided through the multiplicity structure of the squarefree
// decomposition. Requires d >= 1 and p > deg(g).
std::optional<std::pair<u64, UniPoly>> perfect_dth_root(const UniPoly& g, u64 d);

}  // namespace powcirc

#endif
