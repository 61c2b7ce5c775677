#pragma once

#include <vector>

#include "stringnet/scalar.hpp"

namespace stringnet {

/// Dense matrix over one Scalar field. All operations are exact.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(FieldPtr f, std::size_t rows, std::size_t cols);
  static ScalarMatrix identity(const FieldPtr& f, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return f_; }

  Scalar& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  ScalarMatrix operator*(const ScalarMatrix& o) const;
  ScalarMatrix operator+(const ScalarMatrix& o) const;
  ScalarMatrix operator-(const ScalarMatrix& o) const;
  ScalarMatrix scaled(const Scalar& s) const;
  ScalarMatrix transposed() const;
  bool operator==(const ScalarMatrix& o) const;

  Scalar trace() const;
  bool is_zero() const;

  /// Exact rank via fraction-free (Bareiss) elimination.
  std::size_t rank() const;
  /// Column indices of a basis of the column space.
  std::vector<std::size_t> column_space_basis() const;
  /// Basis of the right kernel, one column vector per basis element.
  std::vector<std::vector<Scalar>> kernel_basis() const;
  /// Inverse; throws if singular.
  ScalarMatrix inverse() const;
  /// Solves A x = b for one right-hand side; returns false if inconsistent.
  bool solve(const std::vector<Scalar>& b, std::vector<Scalar>& x) const;
  /// Reduced row echelon form; records pivot columns.
  ScalarMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

 private:
  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

}  // namespace stringnet
