#pragma once

#include <vector>

#include "hpoly/rational.hpp"

namespace hpoly {

struct Echelon;

// Sparse exact matrix over the rationals.  Rows are kept as sorted
// (column, value) lists.  Sized for desk-scale symbolic work: correctness and
// canonical output come first, but elimination is sparse and fraction-free so
// the solver's stacked systems (tens of thousands of near-diagonal rows) are
// cheap.
class RationalMatrix {
 public:
  using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column

  RationalMatrix(size_t rows, size_t cols);
  static RationalMatrix identity(size_t n);
  static RationalMatrix from_rows(size_t cols, std::vector<std::vector<Rational>> dense_rows);

  size_t rows() const { return nrows_; }
  size_t cols() const { return ncols_; }

  void set(size_t i, size_t j, const Rational& v);
  Rational at(size_t i, size_t j) const;
  // Appends a row given as sorted sparse entries; zero values are dropped.
  void append_row(SparseRow row);
  const SparseRow& row(size_t i) const { return rows_[i]; }

  std::vector<Rational> mul_vec(const std::vector<Rational>& v) const;

  // Canonical reduced row echelon form.  Forward elimination is fraction-free
  // over the integers (rows scaled by denominator lcms, content gcd stripped
  // after every combination); a final exact pass normalizes pivots to 1 and
  // clears above, which makes the result unique for the row space.
  Echelon rref() const;

  // Canonical basis of the right kernel: reduced echelon with respect to the
  // column order, each vector's first nonzero entry is 1, vectors sorted by
  // that position.  rank + (number of vectors) = cols.
  std::vector<std::vector<Rational>> kernel_basis() const;

  // Unique exact solution of A x = rhs; throws MathError when the system is
  // inconsistent or underdetermined.
  std::vector<Rational> solve(const std::vector<Rational>& rhs) const;

  // A particular solution of A x = rhs with every free variable set to zero;
  // throws MathError only when the system is inconsistent.
  std::vector<Rational> solve_particular(const std::vector<Rational>& rhs) const;

 private:
  size_t nrows_ = 0, ncols_ = 0;
  std::vector<SparseRow> rows_;
};

struct Echelon {
  RationalMatrix reduced;        // canonical reduced row echelon form, zero rows dropped
  std::vector<int> pivot_cols;   // ascending
  size_t rank = 0;
};

// Subspace equality: do the rows of a and b span the same subspace?
bool same_row_space(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace hpoly
