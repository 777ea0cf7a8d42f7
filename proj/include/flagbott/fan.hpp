#pragma once

// Simplicial fans with block (stage) structure.
//
// A Fan owns a ray table and a list of cones. Cones store indices into the
// ray table, ascending; the vectors live only in the table. Each cone also
// carries the index of the permutation tuple it came from (see
// orbitfan.hpp, perm_tuple_at) so exports can be ordered without re-deriving
// chains.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flagbott/chains.hpp"
#include "flagbott/exactlin.hpp"

namespace flagbott {

// (stage, S) with stage 1-based and S a nonempty proper subset of
// [n_stage + 1].
struct RayLabel {
  int stage = 0;
  Subset set;

  std::string to_string() const;  // "1 {1,2}"

  friend bool operator==(const RayLabel&, const RayLabel&) = default;
  friend auto operator<=>(const RayLabel& a, const RayLabel& b) {
    if (auto c = a.stage <=> b.stage; c != 0) return c;
    return a.set <=> b.set;
  }
};

struct Ray {
  RayLabel label;
  IntVector vector;

  friend bool operator==(const Ray&, const Ray&) = default;
};

using RayIndex = std::uint32_t;

class Fan {
 public:
  Fan() = default;
  Fan(std::vector<int> dims, std::vector<Ray> rays);

  const std::vector<int>& dims() const { return dims_; }
  int stages() const { return static_cast<int>(dims_.size()); }
  std::size_t rank() const { return rank_; }
  // First coordinate of the block for `stage` (1-based).
  std::size_t block_offset(int stage) const;

  const std::vector<Ray>& rays() const { return rays_; }
  const Ray& ray(RayIndex i) const { return rays_[i]; }
  // Needed by tests that perturb a fan to exercise failure reports.
  Ray& mutable_ray(RayIndex i) { return rays_[i]; }
  std::optional<RayIndex> find_ray(const RayLabel& label) const;

  std::size_t num_cones() const { return tuples_.size(); }
  std::span<const RayIndex> cone(std::size_t i) const {
    return {cone_rays_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::uint64_t tuple_index(std::size_t i) const { return tuples_[i]; }

  void reserve_cones(std::size_t count, std::size_t rays_per_cone);
  // `rays` is sorted before it is stored.
  void add_cone(std::vector<RayIndex> rays, std::uint64_t tuple_index);
  void remove_cone(std::size_t i);

  // Column matrix [u_1 ... u_k] of cone i.
  IntMatrix cone_matrix(std::size_t i) const;

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  std::vector<int> dims_;
  std::size_t rank_ = 0;
  std::vector<Ray> rays_;
  std::vector<RayIndex> cone_rays_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint64_t> tuples_;
};

}  // namespace flagbott
