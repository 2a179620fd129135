#pragma once

// Small dense linear algebra over cyclotomic scalars.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gitp/scalars.hpp"

namespace gitp {

using Vec = std::vector<Cyc>;

class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CycMatrix(std::size_t rows, std::size_t cols, Vec data);

  static CycMatrix identity(std::size_t n);
  /// Row-major view of a flattened coordinate value.
  static CycMatrix from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Cyc& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Cyc& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const Vec& data() const { return data_; }

  CycMatrix adjoint() const;
  CycMatrix transpose() const;
  Vec apply(std::span<const Cyc> v) const;
  bool is_zero() const;

  std::size_t rank() const;
  /// Basis of {x : A x = 0}.
  std::vector<Vec> nullspace() const;
  /// Throws DomainError if singular.
  CycMatrix inverse() const;
  /// Indices of pivot columns after row reduction.
  std::vector<std::size_t> pivot_columns() const;

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator*(const Cyc& s, const CycMatrix& a);
  friend bool operator==(const CycMatrix& a, const CycMatrix& b) = default;

  std::string to_string() const;

 private:
  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> reduce_in_place();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

CycMatrix kron(const CycMatrix& a, const CycMatrix& b);

/// Rank of a list of equal-length vectors.
std::size_t rank_of_vectors(const std::vector<Vec>& vectors);

bool is_zero_vec(std::span<const Cyc> v);

}  // namespace gitp
