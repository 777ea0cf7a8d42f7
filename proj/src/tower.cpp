#include "flagbott/tower.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace flagbott {

namespace {

std::string key_string(int j, int l) {
  return "(" + std::to_string(j) + "," + std::to_string(l) + ")";
}

}  // namespace

FlagBottTower::FlagBottTower(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int j = 1; j <= stages(); ++j)
    for (int l = 1; l < j; ++l)
      if (dim(j) >= 0 && dim(l) >= 0)
        matrices_[{j, l}] = IntMatrix(dim(j) + 1, dim(l) + 1);
}

FlagBottTower::FlagBottTower(std::vector<int> dims,
                             std::map<Key, IntMatrix> matrices)
    : dims_(std::move(dims)), matrices_(std::move(matrices)) {}

std::size_t FlagBottTower::rank() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

std::size_t FlagBottTower::ambient_rank() const { return rank() + dims_.size(); }

std::size_t FlagBottTower::block_offset(int stage) const {
  std::size_t off = 0;
  for (int p = 1; p < stage; ++p) off += dim(p);
  return off;
}

std::size_t FlagBottTower::ambient_block_offset(int stage) const {
  std::size_t off = 0;
  for (int p = 1; p < stage; ++p) off += dim(p) + 1;
  return off;
}

const IntMatrix& FlagBottTower::a(int j, int l) const {
  if (l < 1 || l >= j || j > stages())
    throw Error(ErrorCode::kInvalidStagePair,
                "no twisting matrix for stage pair " + key_string(j, l));
  auto it = matrices_.find({j, l});
  if (it == matrices_.end())
    throw Error(ErrorCode::kInvalidTower, "missing matrix " + key_string(j, l));
  return it->second;
}

void FlagBottTower::set_a(int j, int l, IntMatrix m) {
  matrices_[{j, l}] = std::move(m);
}

FlagBottTower FlagBottTower::truncated(int stages) const {
  if (stages < 1 || stages > this->stages())
    throw Error(ErrorCode::kInvalidArgument,
                "cannot truncate to " + std::to_string(stages) + " stages");
  FlagBottTower t(std::vector<int>(dims_.begin(), dims_.begin() + stages), {});
  for (const auto& [key, m] : matrices_)
    if (key.first <= stages) t.matrices_[key] = m;
  return t;
}

std::vector<std::string> validate(const FlagBottTower& t) {
  std::vector<std::string> defects;
  const int m = t.stages();
  if (m == 0) defects.push_back("tower has no stages");
  bool dims_ok = true;
  for (int j = 1; j <= m; ++j) {
    if (t.dim(j) < 1) {
      defects.push_back("stage " + std::to_string(j) + " has dimension " +
                        std::to_string(t.dim(j)) + ", expected >= 1");
      dims_ok = false;
    } else if (t.dim(j) + 1 > 63) {
      defects.push_back("stage " + std::to_string(j) + " dimension " +
                        std::to_string(t.dim(j)) + " exceeds the supported 62");
      dims_ok = false;
    }
  }
  for (const auto& [key, mat] : t.matrices()) {
    auto [j, l] = key;
    if (l < 1 || l >= j || j > m)
      defects.push_back("unexpected matrix " + key_string(j, l));
  }
  for (int j = 1; j <= m; ++j) {
    for (int l = 1; l < j; ++l) {
      auto it = t.matrices().find({j, l});
      if (it == t.matrices().end()) {
        defects.push_back("missing matrix " + key_string(j, l));
        continue;
      }
      if (!dims_ok) continue;
      const auto rows = static_cast<std::size_t>(t.dim(j) + 1);
      const auto cols = static_cast<std::size_t>(t.dim(l) + 1);
      if (it->second.rows() != rows || it->second.cols() != cols)
        defects.push_back("matrix " + key_string(j, l) + " has size " +
                          std::to_string(it->second.rows()) + "x" +
                          std::to_string(it->second.cols()) + ", expected " +
                          std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  return defects;
}

void require_valid(const FlagBottTower& t) {
  auto defects = validate(t);
  if (defects.empty()) return;
  std::string msg = "invalid tower:";
  for (const auto& d : defects) msg += "\n  " + d;
  throw Error(ErrorCode::kInvalidTower, msg);
}

Rational plucker(const RationalMatrix& g, std::span<const int> indices) {
  const std::size_t k = indices.size();
  if (k == 0 || k > g.cols())
    throw Error(ErrorCode::kInvalidIndices, "Plücker index list has bad length");
  for (std::size_t p = 0; p < k; ++p) {
    if (indices[p] < 1 || static_cast<std::size_t>(indices[p]) > g.rows() ||
        (p > 0 && indices[p] <= indices[p - 1]))
      throw Error(ErrorCode::kInvalidIndices,
                  "Plücker indices must be strictly increasing within [1, " +
                      std::to_string(g.rows()) + "]");
  }
  RationalMatrix sub(k, k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t c = 0; c < k; ++c) sub(p, c) = g(indices[p] - 1, c);
  return det(sub);
}

GenericityResult is_generic_matrix(const RationalMatrix& g) {
  if (!g.square())
    throw Error(ErrorCode::kDimension, "genericity needs a square matrix");
  const int size = static_cast<int>(g.rows());
  for (int k = 1; k <= size; ++k) {
    // Lexicographic k-subsets of [size].
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
      if (plucker(g, idx) == 0) return {false, idx};
      int p = k - 1;
      while (p >= 0 && idx[p] == size - k + p + 1) --p;
      if (p < 0) break;
      ++idx[p];
      for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return {true, {}};
}

RationalMatrix sample_generic(int n, std::int64_t bound, std::uint64_t seed,
                              std::uint64_t max_attempts) {
  if (n < 1) throw Error(ErrorCode::kInvalidDimension, "sample_generic needs n >= 1");
  if (bound < 2) throw Error(ErrorCode::kInvalidArgument, "sample_generic needs bound >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(-bound, bound);
  const auto size = static_cast<std::size_t>(n + 1);
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    RationalMatrix g(size, size);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) g(r, c) = Rational(entry(rng));
    if (is_generic_matrix(g).generic) return g;
  }
  throw Error(ErrorCode::kSamplingExhausted,
              "no generic matrix after " + std::to_string(max_attempts) + " attempts");
}

namespace {

Rational rational_pow(const Rational& base, const Integer& exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0) {
    if (exponent < 0)
      throw Error(ErrorCode::kNotInvertible, "zero diagonal entry with negative exponent");
    return Rational(0);
  }
  Integer e = abs(exponent);
  Rational result(1);
  Rational b = exponent < 0 ? Rational(1) / base : base;
  while (e > 0) {
    if ((e & 1) != 0) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return result;
}

}  // namespace

RationalMatrix lambda_of(const IntMatrix& a, const RationalMatrix& b) {
  if (!b.square() || b.rows() != a.cols())
    throw Error(ErrorCode::kDimension,
                "Lambda(A) needs b of size " + std::to_string(a.cols()));
  RationalMatrix out(a.rows(), a.rows());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    Rational entry(1);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      if (a(k, i) != 0 && b(i, i) == 0)
        throw Error(ErrorCode::kNotInvertible,
                    "zero diagonal entry b_" + std::to_string(i + 1) +
                        " raised to a nonzero power");
      entry *= rational_pow(b(i, i), a(k, i));
    }
    out(k, k) = entry;
  }
  return out;
}

std::vector<RationalMatrix> phi_apply(const FlagBottTower& t, int j,
                                      std::span<const RationalMatrix> gs,
                                      std::span<const RationalMatrix> bs) {
  require_valid(t);
  if (j < 1 || j > t.stages())
    throw Error(ErrorCode::kInvalidArgument, "stage " + std::to_string(j) + " out of range");
  if (gs.size() != static_cast<std::size_t>(j) || bs.size() != gs.size())
    throw Error(ErrorCode::kDimension, "phi_apply needs exactly j points and j group elements");
  for (int p = 1; p <= j; ++p) {
    const auto size = static_cast<std::size_t>(t.dim(p) + 1);
    const auto& g = gs[p - 1];
    const auto& b = bs[p - 1];
    if (g.rows() != size || g.cols() != size || b.rows() != size || b.cols() != size)
      throw Error(ErrorCode::kDimension, "stage " + std::to_string(p) + " matrices must be " +
                                             std::to_string(size) + "x" + std::to_string(size));
    for (std::size_t r = 0; r < size; ++r) {
      if (b(r, r) == 0)
        throw Error(ErrorCode::kNotInvertible,
                    "b_" + std::to_string(p) + " has a zero diagonal entry");
      for (std::size_t c = 0; c < r; ++c)
        if (b(r, c) != 0)
          throw Error(ErrorCode::kInvalidArgument,
                      "b_" + std::to_string(p) + " is not upper triangular");
    }
  }

  std::vector<RationalMatrix> out;
  out.reserve(j);
  for (int p = 1; p <= j; ++p) {
    RationalMatrix left = RationalMatrix::identity(t.dim(p) + 1);
    for (int l = 1; l < p; ++l) {
      RationalMatrix lam = lambda_of(t.a(p, l), bs[l - 1]);
      for (std::size_t k = 0; k < lam.rows(); ++k) left(k, k) /= lam(k, k);
    }
    out.push_back(left * gs[p - 1] * bs[p - 1]);
  }
  return out;
}

}  // namespace flagbott
