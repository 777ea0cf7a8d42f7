#pragma once

// Fan of the generic torus orbit closure in a flag Bott manifold, and the
// fixed-point weight machinery that re-derives it independently.
//
// Coordinates. The big torus acts on Z^N, N = sum (n_l + 1), with block l
// holding coordinates (l,1) .. (l,n_l+1). The effective torus lives in Z^n,
// n = sum n_l, obtained by dropping coordinate (l, n_l+1) of every block.
//
// Rays are first evaluated in Z^N by the block formula (ambient_ray_generator)
// and then reduced modulo the kernel of the action (reduce_to_effective),
// which clears every (p, n_p+1) coordinate using the generators returned by
// action_kernel_generator. When every A^(j)_l has a zero last row the
// reduction does nothing and the result is the block formula with those
// coordinates deleted. For other towers plain deletion is not dual to the
// weights; see the orbitfan tests.

#include <cstdint>
#include <span>
#include <vector>

#include "flagbott/chains.hpp"
#include "flagbott/exactlin.hpp"
#include "flagbott/fan.hpp"
#include "flagbott/tower.hpp"

namespace flagbott {

using PermTuple = std::vector<Permutation>;
using ChainTuple = std::vector<Chain>;

inline constexpr std::uint64_t kDefaultConeCap = 1'000'000;

// Block formula for u^l_S in Z^N, d = |[n_l+1] \ S|.
IntVector ambient_ray_generator(const FlagBottTower& t, int stage, const Subset& s);

// kappa_l in Z^N: all ones on block l, -A^(p)_l * 1 on each block p > l.
IntVector action_kernel_generator(const FlagBottTower& t, int stage);

// Z^N -> Z^n: subtract multiples of kappa_p (p ascending) until every
// (p, n_p+1) coordinate vanishes, then drop those coordinates.
IntVector reduce_to_effective(const FlagBottTower& t, IntVector ambient);

// Z^N -> Z^n by dropping (p, n_p+1) with no reduction.
IntVector delete_last_coordinates(const FlagBottTower& t, std::span<const Integer> ambient);

// True when the last row of every A^(j)_l is zero.
bool has_zero_last_rows(const FlagBottTower& t);

// u^l_S in Z^n. Throws InvalidRayLabel for an invalid label.
IntVector ray_generator(const FlagBottTower& t, int stage, const Subset& s);

// sum_l (2^(n_l+1) - 2) rays ordered by stage, then bitmask.
std::vector<Ray> all_rays(const FlagBottTower& t);

ChainTuple chain_tuple_of_perm_tuple(const PermTuple& v);
PermTuple perm_tuple_of_chain_tuple(const ChainTuple& c);

// The ray labels {(l, S^l_p)} of the cone indexed by `c`, ordered by label.
std::vector<RayLabel> maximal_cone(const FlagBottTower& t, const ChainTuple& c);

// prod_l (n_l + 1)!.
Integer cone_count(std::span<const int> dims);

// Position of `v` in the lexicographic order of concatenated one-line
// notations, and its inverse.
std::uint64_t perm_tuple_index(const PermTuple& v);
PermTuple perm_tuple_at(std::span<const int> dims, std::uint64_t index);

// All rays and maximal cones. Cones are ordered by perm_tuple_index. Throws
// EnumerationTooLarge when the cone count exceeds `cone_cap`.
Fan build_fan(const FlagBottTower& t, std::uint64_t cone_cap = kDefaultConeCap);

// (v^T)_{i,k}: row i has its one in column v(i).
IntMatrix row_permutation_matrix(const Permutation& v);

// X^(j)_1 .. X^(j)_{j-1} at the fixed point v, by the recurrence
//   X^(j)_l = B_j A^(j)_l B_l + sum_{p=l+1}^{j-1} X^(j)_p A^(p)_l B_l.
std::vector<IntMatrix> x_matrices(const FlagBottTower& t, const PermTuple& v, int j);
// Throws InvalidStagePair unless 1 <= l < j <= m.
IntMatrix x_matrix(const FlagBottTower& t, const PermTuple& v, int j, int l);

struct WeightSystem {
  PermTuple at;
  std::vector<int> dims;
  // Per stage j, the (n_j+1) x N matrix [X^(j)_1 ... X^(j)_{j-1} B_j 0 ... 0].
  std::vector<IntMatrix> ambient_rows;
  // w^j_i = r_{i+1} - r_i projected to Z^n, ordered by (j, i).
  std::vector<IntVector> projected;

  const IntVector& weight(int j, int i) const;
  IntMatrix matrix() const;  // n x n, rows are the projected weights
};

WeightSystem weights_at(const FlagBottTower& t, const PermTuple& v);

// Columns of the inverse of the weight matrix, sorted. Throws OracleFailure
// when the weight matrix is not unimodular.
std::vector<IntVector> derive_rays_from_weights(const FlagBottTower& t, const PermTuple& v);

// v_{l,S} = (t_1 .. t_d s_1 .. s_{n+1-d}), complement first, both ascending.
Permutation special_permutation(const Subset& s);

struct PairingViolation {
  RayLabel label;
  int weight_stage = 0;
  int weight_index = 0;
  Integer value;
  Integer expected;
};

struct PairingReport {
  std::size_t labels_checked = 0;
  std::size_t pairings_checked = 0;
  std::vector<PairingViolation> violations;

  bool ok() const { return violations.empty(); }
};

// For every label (l, S), pairs u^l_S with all weights at
// (e, .., v_{l,S}, .., e) and expects 1 exactly at (j, i) = (l, d).
PairingReport verify_pairing_identity(const FlagBottTower& t);

struct OracleMismatch {
  std::uint64_t tuple_index = 0;
  std::vector<IntVector> from_weights;
  std::vector<IntVector> from_formula;
  std::string error;  // set when the oracle itself failed
};

struct OracleReport {
  std::size_t cones_checked = 0;
  std::vector<OracleMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

// derive_rays_from_weights against the ray table, cone by cone.
OracleReport verify_oracle(const FlagBottTower& t, const Fan& f);

}  // namespace flagbott
