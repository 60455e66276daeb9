#pragma once

// Exact linear algebra over a Field: dense matrices with fraction-free
// elimination, and sparse rows for the large, nearly monomial systems.

#include <map>
#include <optional>
#include <vector>

#include "qci/field.hpp"

namespace qci {

class Matrix {
 public:
  Matrix(const Field& field, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Rank by fraction-free (Bareiss) elimination.
std::size_t rank(const Matrix& m);

/// cols - rank.
std::size_t nullity(const Matrix& m);

/// Solves A X = B; nullopt when A is singular (A must be square).
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);

/// Row of a sparse matrix: column index -> nonzero entry.
using SparseRow = std::map<std::size_t, Scalar>;

/// Rank by row reduction that only touches stored entries.
std::size_t sparse_rank(std::vector<SparseRow> rows);

/// Solves A X = B for square A (n rows of n columns) and B with n rows;
/// nullopt when A is singular. Returns the rows of X.
std::optional<std::vector<SparseRow>> sparse_solve(std::vector<SparseRow> a, std::vector<SparseRow> b);

}  // namespace qci
