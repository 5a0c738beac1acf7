#include "powcirc/linalg.hpp"

namespace powcirc {

std::vector<std::size_t> rref(FpMatrix& m) {
    const PrimeField& f = m.field();
    const u64 p = f.p();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t col = 0; col < m.cols() && pr < m.rows(); ++col) {
        std::size_t sel = pr;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr) {
            u64* a = m.row(sel);
            u64* b = m.row(pr);
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(a[j], b[j]);
        }
        u64 inv = f.inv(m.at(pr, col));
        if (inv != 1) {
            u64* r = m.row(pr);
            for (std::size_t j = col; j < m.cols(); ++j)
                r[j] = static_cast<u64>(static_cast<u128>(r[j]) * inv % p);
        }
        const u64* prow = m.row(pr);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pr) continue;
            u64 factor = m.at(r, col);
            if (factor == 0) continue;
            u64* row = m.row(r);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (prow[j] == 0) continue;
                u64 t = static_cast<u64>(static_cast<u128>(factor) * prow[j] % p);
                row[j] = row[j] >= t ? row[j] - t : row[j] + p - t;
            }
        }
        pivots.push_back(col);
        ++pr;
    }
    return pivots;
}

std::size_t rank(FpMatrix m) { return rref(m).size(); }

std::vector<std::vector<u64>> nullspace(const FpMatrix& input) {
    FpMatrix m = input;
    const PrimeField& f = m.field();
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<u64>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<u64> v(m.cols(), 0);
        v[free_col] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            // Pivot variable = -(entry in the free column of pivot row i).
            v[pivots[i]] = f.neg(m.at(i, free_col));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

LinearSolution solve_linear(const FpMatrix& a, const std::vector<u64>& b) {
    if (b.size() != a.rows()) fail(errc::parameter, "solve_linear shape mismatch");
    FpMatrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r] % a.field().p();
    }
    std::vector<std::size_t> pivots = rref(aug);
    LinearSolution sol;
    if (!pivots.empty() && pivots.back() == a.cols()) {
        sol.consistent = false;
        return sol;
    }
    sol.consistent = true;
    sol.unique = pivots.size() == a.cols();
    sol.x.assign(a.cols(), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) sol.x[pivots[i]] = aug.at(i, a.cols());
    return sol;
}

}  // namespace powcirc
