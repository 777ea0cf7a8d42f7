#pragma once

// Subsets of [n+1], permutations in one-line notation, and proper chains.
//
// Subset elements and permutation values are 1-based, as in the usual
// notation: element s of [n+1] is bit (s-1) of the mask, and images[i] holds
// v(i+1).

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace flagbott {

class Subset {
 public:
  static constexpr int kMaxGround = 63;

  Subset() = default;
  Subset(int ground, std::uint64_t bits);
  static Subset of(int ground, std::initializer_list<int> members);
  static Subset full(int ground);

  int ground() const { return ground_; }
  std::uint64_t bits() const { return bits_; }
  int size() const;
  bool contains(int s) const { return (bits_ >> (s - 1)) & 1u; }
  bool empty() const { return bits_ == 0; }
  bool is_proper_nonempty() const;
  Subset complement() const;
  std::vector<int> members() const;
  bool is_strict_subset_of(const Subset& other) const;

  std::string to_string() const;  // "{1,3}"

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset& a, const Subset& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  int ground_ = 0;
  std::uint64_t bits_ = 0;
};

struct Permutation {
  std::vector<int> images;  // one-line notation v(1), ..., v(n+1)

  static Permutation identity(int size);
  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[i - 1]; }
  bool valid() const;
  // (v * s_i)(k) = v(s_i(k)): swaps positions i and i+1 of the one-line form.
  Permutation times_adjacent(int i) const;
  std::string to_string() const;  // "(3,1,2)"

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

struct Chain {
  int n = 0;                  // ground set is [n+1]
  std::vector<Subset> sets;   // S_1 c S_2 c ... c S_n, |S_p| = p

  bool valid() const;
  std::string to_string() const;

  friend bool operator==(const Chain&, const Chain&) = default;
};

}  // namespace flagbott
