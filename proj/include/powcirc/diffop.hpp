#ifndef POWCIRC_DIFFOP_HPP
#define POWCIRC_DIFFOP_HPP

#include <span>
#include <vector>

#include "powcirc/unipoly.hpp"

namespace powcirc {

// Wronskian determinant of the family: row i holds the i-th derivatives.
// Computed by fraction-free (Bareiss) elimination over F_p[x].
UniPoly wronskian(std::span<const UniPoly> gs);

// L = sum_i Q_i(x) * D^i with Q_order nonzero.
struct DiffOperator {
    std::vector<UniPoly> coeffs;  // coeffs[i] multiplies the i-th derivative

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    const UniPoly& top() const { return coeffs.back(); }
};

UniPoly apply_operator(const DiffOperator& L, const UniPoly& g);

struct AnnihilatorResult {
    std::size_t order = 0;  // the minimal r' <= r
    DiffOperator L;         // normalized: gcd of coefficients 1, top monic
};

// Minimal r' <= r such that some nonzero operator of order r' with
// coefficient degrees <= r'^2 * delta annihilates f; among its solutions the
// one with minimal deg(Q_r'), gcd-cleared and top-monic. Throws
// errc::not_in_class when no r' <= r admits a solution.
AnnihilatorResult solve_annihilator(const UniPoly& f, std::size_t r, u64 delta);

struct KernelBasis {
    std::vector<UniPoly> basis;  // canonical echelon form, descending leading exponents
    i64 D = 0;                   // the degree bound the basis lives under
};

// Basis of {g : deg g <= D, L(g) = 0}. Requires p > D. The default path
// solves the triangular coefficient recurrence behind a translation that
// makes the top coefficient invertible; kernel_basis_dense is the plain
// nullspace formulation kept as an independent cross-check.
KernelBasis kernel_basis(const DiffOperator& L, i64 D);
KernelBasis kernel_basis_dense(const DiffOperator& L, i64 D);

// Canonical-echelon basis of {g in span(basis) : ord_phi(g) >= e}, through
// the mixed system phi^e * a(x) = sum_i b_i h_i.
KernelBasis subspace_with_factor(const KernelBasis& kb, const UniPoly& phi, u64 e);

// Shared canonicalization: reduced row echelon over coefficient vectors with
// pivots on the highest exponents; zero polynomials dropped.
std::vector<UniPoly> echelon_canonical(std::span<const UniPoly> polys, i64 D);

// Exact span membership by rank comparison.
bool in_span(std::span<const UniPoly> basis, const UniPoly& g, i64 D);

}  // namespace powcirc

#endif
