#include "gitp/linalg.hpp"

#include <algorithm>

namespace gitp {

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols, Vec data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DomainError("matrix data size mismatch");
}

CycMatrix CycMatrix::identity(std::size_t n) {
  CycMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyc(1);
  return m;
}

CycMatrix CycMatrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  CycMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DomainError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

CycMatrix CycMatrix::adjoint() const {
  CycMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

Vec CycMatrix::apply(std::span<const Cyc> v) const {
  if (v.size() != cols_) throw DomainError("matrix/vector size mismatch");
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
  return out;
}

bool CycMatrix::is_zero() const { return is_zero_vec(data_); }

std::vector<std::size_t> CycMatrix::reduce_in_place() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t pivot = rows_;
    for (std::size_t r = row; r < rows_; ++r) {
      if (!(*this)(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows_) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(pivot, c), (*this)(row, c));
    const Cyc inv = (*this)(row, col).inverse();
    for (std::size_t c = col; c < cols_; ++c)
      if (!(*this)(row, c).is_zero()) (*this)(row, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || (*this)(r, col).is_zero()) continue;
      const Cyc factor = (*this)(r, col);
      for (std::size_t c = col; c < cols_; ++c)
        if (!(*this)(row, c).is_zero()) (*this)(r, c) -= factor * (*this)(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t CycMatrix::rank() const {
  CycMatrix copy = *this;
  return copy.reduce_in_place().size();
}

std::vector<std::size_t> CycMatrix::pivot_columns() const {
  CycMatrix copy = *this;
  return copy.reduce_in_place();
}

std::vector<Vec> CycMatrix::nullspace() const {
  CycMatrix copy = *this;
  const auto pivots = copy.reduce_in_place();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols_);
    v[free] = Cyc(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -copy(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

CycMatrix CycMatrix::inverse() const {
  if (!square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = rows_;
  CycMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = Cyc(1);
  }
  const auto pivots = aug.reduce_in_place();
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
  CycMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
  CycMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Cyc& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c)
        if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
    }
  return m;
}

CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum shape mismatch");
  CycMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference shape mismatch");
  CycMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

CycMatrix operator*(const Cyc& s, const CycMatrix& a) {
  CycMatrix m = a;
  for (auto& x : m.data_) x = s * x;
  return m;
}

std::string CycMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ", ";
      out += (*this)(r, c).to_string();
    }
    out += "]";
  }
  return out + "]";
}

CycMatrix kron(const CycMatrix& a, const CycMatrix& b) {
  CycMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      if (a(ar, ac).is_zero()) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          m(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
    }
  return m;
}

std::size_t rank_of_vectors(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  return CycMatrix::from_rows(vectors).rank();
}

bool is_zero_vec(std::span<const Cyc> v) {
  return std::all_of(v.begin(), v.end(), [](const Cyc& x) { return x.is_zero(); });
}

}  // namespace gitp
