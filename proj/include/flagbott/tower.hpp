#pragma once

// Flag Bott tower data and the group-action machinery around it.
//
// Stages are 1-based throughout: a(j, l) is the (n_j+1) x (n_l+1) matrix
// A^(j)_l for 1 <= l < j <= m. Matrix entries themselves are 0-indexed.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flagbott/exactlin.hpp"

namespace flagbott {

class FlagBottTower {
 public:
  using Key = std::pair<int, int>;  // (j, l)

  FlagBottTower() = default;
  // All twisting matrices zero: the product of flag manifolds.
  explicit FlagBottTower(std::vector<int> dims);
  FlagBottTower(std::vector<int> dims, std::map<Key, IntMatrix> matrices);

  int stages() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int stage) const { return dims_.at(stage - 1); }
  // n = sum n_l and N = sum (n_l + 1).
  std::size_t rank() const;
  std::size_t ambient_rank() const;
  // Offset of stage's block in Z^n and in Z^N respectively.
  std::size_t block_offset(int stage) const;
  std::size_t ambient_block_offset(int stage) const;

  // Throws InvalidStagePair when l >= j and InvalidTower when the matrix is
  // absent.
  const IntMatrix& a(int j, int l) const;
  void set_a(int j, int l, IntMatrix m);
  const std::map<Key, IntMatrix>& matrices() const { return matrices_; }

  // The tower of the first `stages` stages.
  FlagBottTower truncated(int stages) const;

  friend bool operator==(const FlagBottTower&, const FlagBottTower&) = default;

 private:
  std::vector<int> dims_;
  std::map<Key, IntMatrix> matrices_;
};

// Every violated invariant, one message per defect. Empty means valid.
std::vector<std::string> validate(const FlagBottTower& t);
// Throws InvalidTower listing the defects.
void require_valid(const FlagBottTower& t);

// X_{i_1..i_k}(g): determinant of rows i_1 < ... < i_k (1-based) and columns
// 1..k. Throws InvalidIndices for an empty, unsorted or out-of-range list.
Rational plucker(const RationalMatrix& g, std::span<const int> indices);

struct GenericityResult {
  bool generic = false;
  std::vector<int> witness;  // first vanishing index list when not generic
};

// Checks all 2^(n+1) - 1 Plücker coordinates, by size and then
// lexicographically, stopping at the first zero.
GenericityResult is_generic_matrix(const RationalMatrix& g);

inline constexpr std::uint64_t kDefaultSampleRetries = 10000;

// (n+1) x (n+1) integer matrix with entries uniform in [-bound, bound],
// redrawn until generic. Deterministic in `seed`. Throws SamplingExhausted
// after `max_attempts` failures and InvalidArgument when bound < 2.
RationalMatrix sample_generic(int n, std::int64_t bound, std::uint64_t seed,
                              std::uint64_t max_attempts = kDefaultSampleRetries);

// Lambda(A)(b): the diagonal matrix with k-th entry prod_i b_ii^(A_ki).
// Only the diagonal of b is read. Throws NotInvertible when a zero diagonal
// entry meets a nonzero exponent.
RationalMatrix lambda_of(const IntMatrix& a, const RationalMatrix& b);

// Phi_j((g_1..g_j), (b_1..b_j)): component p is
// Lambda^p_1(b_1)^-1 ... Lambda^p_{p-1}(b_{p-1})^-1 g_p b_p.
std::vector<RationalMatrix> phi_apply(const FlagBottTower& t, int j,
                                      std::span<const RationalMatrix> gs,
                                      std::span<const RationalMatrix> bs);

}  // namespace flagbott
