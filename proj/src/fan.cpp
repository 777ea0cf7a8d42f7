#include "flagbott/fan.hpp"

#include <algorithm>
#include <numeric>

namespace flagbott {

std::string RayLabel::to_string() const {
  return std::to_string(stage) + " " + set.to_string();
}

Fan::Fan(std::vector<int> dims, std::vector<Ray> rays)
    : dims_(std::move(dims)), rays_(std::move(rays)) {
  rank_ = std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
  for (const auto& r : rays_)
    if (r.vector.size() != rank_)
      throw Error(ErrorCode::kDimension,
                  "ray " + r.label.to_string() + " has wrong length");
}

std::size_t Fan::block_offset(int stage) const {
  if (stage < 1 || stage > stages() + 1)
    throw Error(ErrorCode::kInvalidArgument,
                "stage " + std::to_string(stage) + " out of range");
  std::size_t off = 0;
  for (int p = 1; p < stage; ++p) off += dims_[p - 1];
  return off;
}

std::optional<RayIndex> Fan::find_ray(const RayLabel& label) const {
  auto it = std::lower_bound(
      rays_.begin(), rays_.end(), label,
      [](const Ray& r, const RayLabel& l) { return r.label < l; });
  if (it != rays_.end() && it->label == label)
    return static_cast<RayIndex>(it - rays_.begin());
  // Tables built by hand need not be sorted.
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i].label == label) return static_cast<RayIndex>(i);
  return std::nullopt;
}

void Fan::reserve_cones(std::size_t count, std::size_t rays_per_cone) {
  cone_rays_.reserve(count * rays_per_cone);
  offsets_.reserve(count + 1);
  tuples_.reserve(count);
}

void Fan::add_cone(std::vector<RayIndex> rays, std::uint64_t tuple_index) {
  std::sort(rays.begin(), rays.end());
  for (RayIndex r : rays)
    if (r >= rays_.size())
      throw Error(ErrorCode::kInvalidArgument, "cone references missing ray");
  cone_rays_.insert(cone_rays_.end(), rays.begin(), rays.end());
  offsets_.push_back(cone_rays_.size());
  tuples_.push_back(tuple_index);
}

void Fan::remove_cone(std::size_t i) {
  const std::size_t begin = offsets_[i];
  const std::size_t len = offsets_[i + 1] - begin;
  cone_rays_.erase(cone_rays_.begin() + static_cast<std::ptrdiff_t>(begin),
                   cone_rays_.begin() + static_cast<std::ptrdiff_t>(begin + len));
  offsets_.erase(offsets_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  for (std::size_t k = i + 1; k < offsets_.size(); ++k) offsets_[k] -= len;
  tuples_.erase(tuples_.begin() + static_cast<std::ptrdiff_t>(i));
}

IntMatrix Fan::cone_matrix(std::size_t i) const {
  auto c = cone(i);
  IntMatrix m(rank_, c.size());
  for (std::size_t col = 0; col < c.size(); ++col) {
    const auto& v = rays_[c[col]].vector;
    for (std::size_t row = 0; row < rank_; ++row) m(row, col) = v[row];
  }
  return m;
}

}  // namespace flagbott
