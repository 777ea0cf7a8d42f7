#pragma once

// Exact integer and rational matrices.
//
// Storage is row-major and 0-indexed. Callers translating 1-indexed formulas
// (stage numbers, row k of A^(j)_l, ...) subtract one at the call site; nothing
// in this header knows about the 1-indexed conventions used elsewhere.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flagbott/error.hpp"

namespace flagbott {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw Error(ErrorCode::kDimension, "entry count does not match shape");
  }
  // Nested braces, one list per row. All rows must have the same length.
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_)
        throw Error(ErrorCode::kDimension, "ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const T> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<T> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  const std::vector<T>& entries() const { return entries_; }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e != 0) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  // Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
      throw Error(ErrorCode::kDimension, "block does not fit");
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c)
        (*this)(r0 + r, c0 + c) = block(r, c);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::kDimension, "matrix sum shape mismatch");
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::kDimension,
                "cannot multiply " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " by " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& lhs = a(r, k);
      if (lhs == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += lhs * b(k, c);
    }
  return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return mat_mul(a, b);
}

IntMatrix hstack(std::span<const IntMatrix> blocks);
RationalMatrix to_rational(const IntMatrix& m);

// Fraction-free (Bareiss) determinant. Every intermediate division is exact.
Integer det(const IntMatrix& m);
Rational det(const RationalMatrix& m);

struct Adjugate {
  Integer det;
  IntMatrix adj;  // adj * M == M * adj == det * I
};

// Bareiss-Jordan elimination on [M | I]. Row i of `adj` is orthogonal to every
// column of M except column i, which makes it the integer kernel of the other
// n-1 columns. Throws (kDimension) for non-square input; a singular matrix
// yields det = 0 and an unspecified `adj`.
Adjugate adjugate(const IntMatrix& m);

// Throws NotUnimodular carrying the determinant when |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& m);

Integer dot(std::span<const Integer> a, std::span<const Integer> b);

std::string to_string(const IntMatrix& m);
std::string to_string(const RationalMatrix& m);

}  // namespace flagbott
