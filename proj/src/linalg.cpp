#include "qci/linalg.hpp"

#include <utility>

#include "qci/error.hpp"

namespace qci {

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
  Matrix out(field_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Scalar& b = other(k, c);
        if (!b.is_zero()) out(r, c) += a * b;
      }
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::size_t rank(const Matrix& input) {
  Matrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Scalar prev = m.field().one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    const Scalar p = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Scalar lead = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        // Bareiss step: the division by the previous pivot is exact.
        m(i, j) = (p * m(i, j) - lead * m(r, j)) / prev;
      }
      m(i, c) = m.field().zero();
    }
    prev = p;
    ++r;
  }
  return r;
}

std::size_t nullity(const Matrix& m) { return m.cols() - rank(m); }

std::optional<Matrix> solve(const Matrix& a_in, const Matrix& b_in) {
  if (a_in.rows() != a_in.cols() || a_in.rows() != b_in.rows())
    throw Error(ErrorCode::InvalidInput, "solve expects a square system");
  const std::size_t n = a_in.rows();
  const std::size_t k = b_in.cols();
  Matrix a = a_in;
  Matrix b = b_in;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(c, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(b(pivot, j), b(c, j));
    }
    const Scalar inv = a(c, c).inverse();
    for (std::size_t j = c; j < n; ++j) a(c, j) *= inv;
    for (std::size_t j = 0; j < k; ++j) b(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      for (std::size_t j = 0; j < k; ++j) b(i, j) -= f * b(c, j);
    }
  }
  return b;
}

std::optional<Matrix> inverse(const Matrix& a) { return solve(a, Matrix::identity(a.field(), a.rows())); }

namespace {

// row -= factor * pivot, dropping cancelled entries.
void axpy(SparseRow& row, const Scalar& factor, const SparseRow& pivot) {
  for (const auto& [col, value] : pivot) {
    auto it = row.find(col);
    if (it == row.end()) {
      row.emplace(col, -(factor * value));
    } else {
      it->second -= factor * value;
      if (it->second.is_zero()) row.erase(it);
    }
  }
}

void scale(SparseRow& row, const Scalar& factor) {
  for (auto& entry : row) entry.second *= factor;
}

}  // namespace

std::size_t sparse_rank(std::vector<SparseRow> rows) {
  std::map<std::size_t, SparseRow> pivots;  // leading column -> row with leading entry 1
  for (SparseRow& row : rows) {
    while (!row.empty()) {
      const auto [lead, value] = *row.begin();
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        scale(row, value.inverse());
        pivots.emplace(lead, std::move(row));
        break;
      }
      const Scalar factor = value;
      axpy(row, factor, it->second);
    }
  }
  return pivots.size();
}

std::optional<std::vector<SparseRow>> sparse_solve(std::vector<SparseRow> a, std::vector<SparseRow> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::InvalidInput, "solve expects matching row counts");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t r = c; r < n; ++r) {
      if (!a[r].empty() && a[r].begin()->first == c) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    std::swap(b[pivot], b[c]);
    const Scalar inv = a[c].begin()->second.inverse();
    scale(a[c], inv);
    scale(b[c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      auto it = a[r].find(c);
      if (it == a[r].end()) continue;
      const Scalar factor = it->second;
      axpy(a[r], factor, a[c]);
      axpy(b[r], factor, b[c]);
    }
  }
  return b;
}

}  // namespace qci
