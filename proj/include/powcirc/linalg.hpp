#ifndef POWCIRC_LINALG_HPP
#define POWCIRC_LINALG_HPP

#include <optional>
#include <vector>

#include "powcirc/field.hpp"

namespace powcirc {

// Dense row-major matrix over F_p, just big enough for the exact
// elimination this project needs.
class FpMatrix {
  public:
    FpMatrix(const PrimeField& f, std::size_t rows, std::size_t cols)
        : f_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    const PrimeField& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    u64& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    u64 at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    u64* row(std::size_t r) { return a_.data() + r * cols_; }
    const u64* row(std::size_t r) const { return a_.data() + r * cols_; }

  private:
    PrimeField f_;
    std::size_t rows_, cols_;
    std::vector<u64> a_;
};

// In-place reduced row echelon form. Pivot selection is deterministic: the
// first row (smallest index) with a nonzero entry in the current column.
// Returns the pivot columns in order; rank is their count.
std::vector<std::size_t> rref(FpMatrix& m);

std::size_t rank(FpMatrix m);

// Canonical nullspace basis of m (viewed as equations m * x = 0). One basis
// vector per free column, in ascending column order, with a 1 in that column.
std::vector<std::vector<u64>> nullspace(const FpMatrix& m);

struct LinearSolution {
    bool consistent = false;
    bool unique = false;
    std::vector<u64> x;  // valid when consistent; free variables set to 0
};

// Solve m * x = b exactly.
LinearSolution solve_linear(const FpMatrix& m, const std::vector<u64>& b);

}  // namespace powcirc

#endif
