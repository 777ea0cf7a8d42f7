#include "flagbott/exactlin.hpp"

#include <sstream>
#include <utility>

namespace flagbott {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "DimensionError";
    case ErrorCode::kNotUnimodular: return "NotUnimodular";
    case ErrorCode::kInvalidRayLabel: return "InvalidRayLabel";
    case ErrorCode::kInvalidChain: return "InvalidChain";
    case ErrorCode::kInvalidDimension: return "InvalidDimension";
    case ErrorCode::kInvalidIndices: return "InvalidIndices";
    case ErrorCode::kSamplingExhausted: return "SamplingExhausted";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kInvalidStagePair: return "InvalidStagePair";
    case ErrorCode::kOracleFailure: return "OracleFailure";
    case ErrorCode::kNotSimplicial: return "NotSimplicial";
    case ErrorCode::kInvalidTower: return "InvalidTower";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
  }
  return "UnknownError";
}

IntMatrix hstack(std::span<const IntMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows)
      throw Error(ErrorCode::kDimension, "hstack row count mismatch");
    cols += b.cols();
  }
  IntMatrix out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    out.set_block(0, c0, b);
    c0 += b.cols();
  }
  return out;
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

namespace {

template <class T>
T bareiss_det(Matrix<T> a) {
  if (!a.square()) throw Error(ErrorCode::kDimension, "det of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return T(0);
      for (std::size_t c = k; c < n; ++c) std::swap(a(k, c), a(p, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  T d = a(n - 1, n - 1);
  return negate ? T(-d) : d;
}

}  // namespace

Integer det(const IntMatrix& m) { return bareiss_det(m); }
Rational det(const RationalMatrix& m) { return bareiss_det(m); }

Adjugate adjugate(const IntMatrix& m) {
  if (!m.square())
    throw Error(ErrorCode::kDimension, "adjugate of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {Integer(1), IntMatrix()};

  // Work matrix [M | I]. After full elimination the left block is pivot * I
  // and the right block is E with E * M = pivot * I, i.e. E = pivot * M^-1.
  const std::size_t w = 2 * n;
  IntMatrix a(n, w);
  a.set_block(0, 0, m);
  for (std::size_t i = 0; i < n; ++i) a(i, n + i) = 1;

  Integer prev(1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return {Integer(0), IntMatrix(n, n)};
      for (std::size_t c = 0; c < w; ++c) std::swap(a(k, c), a(p, c));
      negate = !negate;
    }
    const Integer pivot = a(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Integer factor = a(i, k);
      for (std::size_t j = 0; j < w; ++j) {
        if (j == k) continue;
        a(i, j) = (pivot * a(i, j) - factor * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = pivot;
  }
  // The final pivot is det of the row-permuted matrix. adj(M) = det(M) M^-1
  // and the right block is pivot * M^-1, so they differ by the swap sign.
  Adjugate result;
  result.det = negate ? Integer(-prev) : prev;
  result.adj = IntMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      result.adj(r, c) = negate ? Integer(-a(r, n + c)) : a(r, n + c);
  return result;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  Adjugate a = adjugate(m);
  if (a.det == 1) return std::move(a.adj);
  if (a.det == -1) {
    IntMatrix inv(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) inv(r, c) = -a.adj(r, c);
    return inv;
  }
  throw NotUnimodular(a.det);
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::kDimension, "dot product length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

namespace {

template <class T>
std::string matrix_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace

std::string to_string(const IntMatrix& m) { return matrix_string(m); }
std::string to_string(const RationalMatrix& m) { return matrix_string(m); }

}  // namespace flagbott
