#pragma once

// Type-A permutohedral fan and the chain <-> permutation bijection.

#include <vector>

#include "flagbott/chains.hpp"
#include "flagbott/exactlin.hpp"
#include "flagbott/fan.hpp"

namespace flagbott {

// u_S in Z^n. Throws InvalidRayLabel for empty or full S.
IntVector perm_ray_vector(int n, const Subset& s);

// S_p = {v(n+2-p), ..., v(n+1)}.
Chain chain_of_permutation(const Permutation& v);
// Inverse of chain_of_permutation. Throws InvalidChain on a malformed chain.
Permutation permutation_of_chain(const Chain& c);

// All permutations of [size] in lexicographic order of one-line notation.
std::vector<Permutation> all_permutations(int size);

// The fan of the permutohedral variety X_n as a one-stage Fan: rays ordered
// by bitmask, cones by lexicographic permutation. Throws InvalidDimension for
// n < 1.
Fan perm_fan(int n);

}  // namespace flagbott
