#pragma once

// Sparse exact linear algebra over Q: row-major sparse matrices, reduced row
// echelon form, kernels and ranks (with an optional modular prescreen).

#include "cdga/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

namespace cdga {

/// Sorted by column, no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense);
  /// Duplicate (row, col) pairs are summed; zeros are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& entries);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  const SparseRow& row(std::size_t i) const { return data_.at(i); }
  /// Replaces row i. The row is sorted and cleaned of zeros; throws on out-of-range columns.
  void set_row(std::size_t i, SparseRow r);
  Rational at(std::size_t i, std::size_t j) const;

  SparseMatrix transpose() const;
  std::vector<std::vector<Rational>> to_dense() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
bool is_zero(const SparseMatrix& m);

/// Sorts by column, merges duplicates and removes zeros.
void normalize_row(SparseRow& r);

/// y = a*x + y on sparse rows.
void axpy(const Rational& a, const SparseRow& x, SparseRow& y);

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Every stored row has leading entry 1 in its pivot column and zeros in all
/// other pivot columns, so reduce() is a single pass and the stored rows are
/// always the RREF of the span seen so far.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols = 0) : cols_(cols), pivot_row_(cols, -1) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Normal form of v modulo the current span: the result vanishes on every
  /// pivot column.
  SparseRow reduce(const SparseRow& v) const;

  /// Adds v to the span. Returns true iff the rank grew.
  bool add(const SparseRow& v);

  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }
  /// Pivot columns, ascending.
  std::vector<std::size_t> pivots() const;
  /// Stored row whose pivot is col.
  const SparseRow& pivot_row(std::size_t col) const { return rows_.at(static_cast<std::size_t>(pivot_row_.at(col))); }

  /// Rows sorted by pivot column.
  SparseMatrix to_matrix() const;

 private:
  std::size_t cols_;
  std::vector<SparseRow> rows_;
  std::vector<long> pivot_row_;
};

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  SparseMatrix reduced;
};

/// Reduced row echelon form. The output is the unique RREF of the row space;
/// rows are fed to the eliminator sparsest-first to limit fill-in.
RrefResult rref(const SparseMatrix& m);

/// Basis of {v : m v = 0}, one sparse column vector per free column.
std::vector<SparseRow> kernel_basis(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

/// Rank over Z/p (p prime, < 2^31). Returns the indices of a maximal set of
/// rows independent mod p, in insertion order. Fails (returns false) if p
/// divides some denominator.
bool rank_mod_p(const SparseMatrix& m, std::uint32_t p, std::vector<std::size_t>& independent_rows);

/// Exact rank. A rank computation modulo a word-size prime selects rows that
/// are certainly independent over Q; these seed the exact eliminator and the
/// remaining rows are then reduced exactly, so the result is certified.
std::size_t rank_with_modular_prescreen(const SparseMatrix& m);

}  // namespace cdga
