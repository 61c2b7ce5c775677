#include "stringnet/matrix.hpp"

#include <stdexcept>

namespace stringnet {

ScalarMatrix::ScalarMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, f_->zero()) {}

ScalarMatrix ScalarMatrix::identity(const FieldPtr& f, std::size_t n) {
  ScalarMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
  if (cols_ != o.rows_) throw std::logic_error("matrix: shape mismatch in product");
  ScalarMatrix r(f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.at(i, j) += a * b;
      }
    }
  return r;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::logic_error("matrix: shape mismatch");
  ScalarMatrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::logic_error("matrix: shape mismatch");
  ScalarMatrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

ScalarMatrix ScalarMatrix::scaled(const Scalar& s) const {
  ScalarMatrix r = *this;
  for (auto& x : r.e_) x *= s;
  return r;
}

ScalarMatrix ScalarMatrix::transposed() const {
  ScalarMatrix r(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool ScalarMatrix::operator==(const ScalarMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!(e_[i] == o.e_[i])) return false;
  return true;
}

Scalar ScalarMatrix::trace() const {
  Scalar t = f_->zero();
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

bool ScalarMatrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

// Bareiss one-step fraction-free elimination; also records pivot columns.
std::size_t ScalarMatrix::rank() const {
  ScalarMatrix m = *this;
  Scalar prev = f_->one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && m.at(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(r, j));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      for (std::size_t j = c + 1; j < cols_; ++j)
        m.at(i, j) = (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
      m.at(i, c) = f_->zero();
    }
    prev = m.at(r, c);
    ++r;
  }
  return r;
}

ScalarMatrix ScalarMatrix::rref(std::vector<std::size_t>* pivots) const {
  ScalarMatrix m = *this;
  if (pivots) pivots->clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && m.at(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(r, j));
    Scalar inv = m.at(r, c).inverse();
    for (std::size_t j = c; j < cols_; ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar factor = m.at(i, c);
      for (std::size_t j = c; j < cols_; ++j) m.at(i, j) -= factor * m.at(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

std::vector<std::size_t> ScalarMatrix::column_space_basis() const {
  std::vector<std::size_t> pivots;
  rref(&pivots);
  return pivots;
}

std::vector<std::vector<Scalar>> ScalarMatrix::kernel_basis() const {
  std::vector<std::size_t> pivots;
  ScalarMatrix m = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Scalar> v(cols_, f_->zero());
    v[c] = f_->one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

ScalarMatrix ScalarMatrix::inverse() const {
  if (rows_ != cols_) throw std::logic_error("matrix: inverse of non-square");
  ScalarMatrix aug(f_, rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = f_->one();
  }
  std::vector<std::size_t> pivots;
  ScalarMatrix red = aug.rref(&pivots);
  if (pivots.size() != rows_ || pivots.back() >= cols_)
    throw std::domain_error("matrix: singular");
  ScalarMatrix inv(f_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = red.at(i, cols_ + j);
  return inv;
}

bool ScalarMatrix::solve(const std::vector<Scalar>& b, std::vector<Scalar>& x) const {
  if (b.size() != rows_) throw std::logic_error("matrix: rhs size mismatch");
  ScalarMatrix aug(f_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<std::size_t> pivots;
  ScalarMatrix red = aug.rref(&pivots);
  if (!pivots.empty() && pivots.back() == cols_) return false;  // inconsistent
  x.assign(cols_, f_->zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = red.at(r, cols_);
  return true;
}

std::vector<Scalar> ScalarMatrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw std::logic_error("matrix: vector size mismatch");
  std::vector<Scalar> r(rows_, f_->zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

}  // namespace stringnet
